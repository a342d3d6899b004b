// Copyright 2026 The Harakat Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HARAKAT_HARAKAT_HPP
#define HARAKAT_HARAKAT_HPP

#include "harakat/binary_io.hpp"
#include "harakat/ce_features.hpp"
#include "harakat/codec.hpp"
#include "harakat/corpus.hpp"
#include "harakat/cw_features.hpp"
#include "harakat/error.hpp"
#include "harakat/eval.hpp"
#include "harakat/labels.hpp"
#include "harakat/morpho.hpp"
#include "harakat/nn/adamax.hpp"
#include "harakat/nn/sample.hpp"
#include "harakat/nn/sequence_model.hpp"
#include "harakat/nn/trainer.hpp"
#include "harakat/pipeline.hpp"
#include "harakat/postcorrect.hpp"
#include "harakat/relaxed.hpp"
#include "harakat/sentence.hpp"
#include "harakat/utf8.hpp"

#endif  // HARAKAT_HARAKAT_HPP
