#pragma once

#include "hhb/bound.hpp"
#include "hhb/catalog.hpp"
#include "hhb/errors.hpp"
#include "hhb/format.hpp"
#include "hhb/hypergraph.hpp"
#include "hhb/io.hpp"
#include "hhb/kpartite.hpp"
#include "hhb/multiset.hpp"
#include "hhb/optimizer.hpp"
#include "hhb/oracle.hpp"
#include "hhb/parallel.hpp"
#include "hhb/spectral.hpp"
#include "hhb/support.hpp"
#include "hhb/symmetry.hpp"
#include "hhb/tensor.hpp"
