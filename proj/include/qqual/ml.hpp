#pragma once

#include "qqual/ml/classifiers.hpp"
#include "qqual/ml/dataset.hpp"
#include "qqual/ml/evaluate.hpp"
#include "qqual/ml/harness.hpp"
#include "qqual/ml/info_gain.hpp"
#include "qqual/ml/model.hpp"
#include "qqual/ml/ranking.hpp"
