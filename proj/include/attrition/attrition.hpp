#pragma once

#include "attrition/cluster_classifier.hpp"
#include "attrition/compare.hpp"
#include "attrition/crossval.hpp"
#include "attrition/csv.hpp"
#include "attrition/domain.hpp"
#include "attrition/errors.hpp"
#include "attrition/grades.hpp"
#include "attrition/ingest.hpp"
#include "attrition/insight.hpp"
#include "attrition/kmeans.hpp"
#include "attrition/logistic.hpp"
#include "attrition/matrix.hpp"
#include "attrition/metrics.hpp"
#include "attrition/report_io.hpp"
#include "attrition/rng.hpp"
#include "attrition/roc.hpp"
#include "attrition/select_k.hpp"
#include "attrition/svg.hpp"
#include "attrition/synth.hpp"
#include "attrition/validity.hpp"
#include "attrition/version.hpp"
