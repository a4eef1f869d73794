#pragma once

#include "ffmzv/composition.hpp"
#include "ffmzv/d1poly.hpp"
#include "ffmzv/formal_sum.hpp"
#include "ffmzv/fq.hpp"
#include "ffmzv/ladder.hpp"
#include "ffmzv/laurent.hpp"
#include "ffmzv/poly.hpp"
#include "ffmzv/power_sums.hpp"
#include "ffmzv/rational.hpp"
#include "ffmzv/reduction.hpp"
#include "ffmzv/relations.hpp"
#include "ffmzv/shuffle.hpp"

namespace ffmzv {

// One field, one set of memo tables, all pipelines wired together. Not
// shareable across threads; create one per worker.
struct Session {
    explicit Session(std::uint32_t p, std::uint32_t e = 1, std::vector<std::uint32_t> modulus = {})
        : field(p, e, std::move(modulus)), shuffle(field), power(field, shuffle), reducer(field, shuffle), relations(field, shuffle, power, reducer) {}

    Field field;
    ShuffleAlgebra shuffle;
    PowerSums power;
    Reducer reducer;
    RelationFinder relations;
};

}  // namespace ffmzv
