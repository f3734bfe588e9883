#pragma once

#include "revcheck/errors.hpp"
#include "revcheck/textkit.hpp"
#include "revcheck/ingest.hpp"
#include "revcheck/rules.hpp"
#include "revcheck/classifier.hpp"
#include "revcheck/eval.hpp"
#include "revcheck/report.hpp"
