#pragma once

#include "storyscope/config.hpp"
#include "storyscope/corpus.hpp"
#include "storyscope/cross_validation.hpp"
#include "storyscope/entity_grid.hpp"
#include "storyscope/features.hpp"
#include "storyscope/labels.hpp"
#include "storyscope/lda.hpp"
#include "storyscope/markers.hpp"
#include "storyscope/metrics.hpp"
#include "storyscope/model_io.hpp"
#include "storyscope/naive_bayes.hpp"
#include "storyscope/pipeline.hpp"
#include "storyscope/rng.hpp"
#include "storyscope/svm.hpp"
#include "storyscope/synthetic.hpp"
#include "storyscope/tagger.hpp"
#include "storyscope/text.hpp"
#include "storyscope/topics.hpp"
#include "storyscope/winnow.hpp"
