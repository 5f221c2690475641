#pragma once

#include <cstdint>

#include "villus/image.hpp"

namespace villus {

// Procedural stand-in for an H&E placental section: rounded and elongated
// villous islands (stroma, trophoblast rim, nuclei, capillaries) in a pale
// intervillous space with scattered maternal red cells. The mask marks the
// villous islands. Deterministic in (size, seed).
LabeledPair synthetic_exemplar(int size, std::uint64_t seed);

}  // namespace villus
