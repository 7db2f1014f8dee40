#ifndef NBAUDIT_NBAUDIT_HPP
#define NBAUDIT_NBAUDIT_HPP

#include "nbaudit/classifier.hpp"
#include "nbaudit/config.hpp"
#include "nbaudit/dataset.hpp"
#include "nbaudit/error.hpp"
#include "nbaudit/graph_features.hpp"
#include "nbaudit/metrics.hpp"
#include "nbaudit/pipeline.hpp"
#include "nbaudit/posterior_distribution.hpp"
#include "nbaudit/random.hpp"
#include "nbaudit/representativeness.hpp"
#include "nbaudit/sampling.hpp"
#include "nbaudit/text_features.hpp"

#endif  // NBAUDIT_NBAUDIT_HPP
