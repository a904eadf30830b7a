#pragma once

#include "vadkit/clustering.hpp"
#include "vadkit/config.hpp"
#include "vadkit/emotion.hpp"
#include "vadkit/error.hpp"
#include "vadkit/harness/evaluate.hpp"
#include "vadkit/harness/records.hpp"
#include "vadkit/harness/report.hpp"
#include "vadkit/harness/split.hpp"
#include "vadkit/harness/summary.hpp"
#include "vadkit/lexicon.hpp"
#include "vadkit/metrics.hpp"
#include "vadkit/model_io.hpp"
#include "vadkit/similarity.hpp"
#include "vadkit/space.hpp"
#include "vadkit/transcode.hpp"
#include "vadkit/vad_point.hpp"
#include "vadkit/version.hpp"
