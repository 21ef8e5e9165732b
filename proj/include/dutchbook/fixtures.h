// Copyright 2026 The Dutchbook Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DUTCHBOOK_FIXTURES_H_
#define DUTCHBOOK_FIXTURES_H_

#include "dutchbook/book.h"
#include "dutchbook/consistency.h"
#include "dutchbook/model.h"

// Reference instances shared by the tests, the acceptance suite and the
// sample documents under data/.
namespace dutchbook::fixtures {

// States sq, ma, pa. Contingencies sq, ma, pa, sm, mp, ps, all roots and
// leaves. Each state reaches its own singleton and the two pair contingencies
// containing it, each with probability 1/3.
LearningEnvironment LarryEnvironment();

// 3/4 on the first-named state at ps (sq), sm (ma) and mp (pa); point masses
// at the singletons.
BeliefSystem RegretBeliefs(const LearningEnvironment& larry);
// 1/2 on each state at the pair contingencies.
BeliefSystem UniformBeliefs(const LearningEnvironment& larry);
// Beliefs derived from LexLcps().
BeliefSystem LexBeliefs(const LearningEnvironment& larry);
// [(sq:1), (ma:2/3, pa:1/3)].
Lcps LexLcps();
// 9 on the favoured state and -10 on the other at each pair contingency.
GambleSystem LarryBook(const LearningEnvironment& larry);

// States u, v; root leaves a, b; eta(u) = (3/4, 1/4), eta(v) = (1/4, 3/4).
LearningEnvironment SkewedEnvironment();

// States A, B, C; root h0 with children h1 (A, B) and h2 (C).
LearningEnvironment NestedEnvironment();
// mu(.|h0) uniform, mu(.|h1) = (3/4, 1/4, 0), mu(.|h2) = point mass on C.
BeliefSystem DriftBeliefs(const LearningEnvironment& nested);
// Same as DriftBeliefs but mu(.|h1) = (1/2, 1/2, 0).
BeliefSystem ConditionedBeliefs(const LearningEnvironment& nested);
// The two-stage book on (h0, h1) for the pair (B, A) at epsilon 1/2.
GambleSystem NestedBook(const LearningEnvironment& nested);

// States a, b; root leaves h, h2, each reached with probability 1/2 by
// either state.
LearningEnvironment PairEnvironment();
// mu(a|h) = 2/3, mu(a|h2) = 1/2.
BeliefSystem PairBeliefs(const LearningEnvironment& pair);

}  // namespace dutchbook::fixtures

#endif  // DUTCHBOOK_FIXTURES_H_
