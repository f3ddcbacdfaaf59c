#pragma once

#include "seqtag/corpus.hpp"
#include "seqtag/decode.hpp"
#include "seqtag/errors.hpp"
#include "seqtag/estimate.hpp"
#include "seqtag/eval.hpp"
#include "seqtag/lexicon.hpp"
#include "seqtag/metrics.hpp"
#include "seqtag/model.hpp"
#include "seqtag/model_io.hpp"
#include "seqtag/oracle.hpp"
#include "seqtag/pipeline.hpp"
