#ifndef REVIVAL_REVIVAL_HPP
#define REVIVAL_REVIVAL_HPP

// Umbrella header for the whole library.

#include "bit_vector.hpp"
#include "compute.hpp"
#include "full_index.hpp"
#include "identity.hpp"
#include "patterns.hpp"
#include "storage.hpp"
#include "vm.hpp"
#include "wavelet_tree.hpp"

#endif  // REVIVAL_REVIVAL_HPP
