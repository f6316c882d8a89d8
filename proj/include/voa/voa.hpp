#pragma once

// Exact symbolic kernel for universal affine vertex algebras V^k(g):
// PBW bases with affine straightening, Sugawara operators, singular-vector
// search by exact linear algebra, the Zhu C2 projection to C[g*], and
// Slodowy-slice certificates.

#include "grpoisson.hpp"
#include "linalg.hpp"
#include "pbw.hpp"
#include "random.hpp"
#include "rational.hpp"
#include "reports.hpp"
#include "rootsys.hpp"
#include "singular.hpp"
#include "slodowy.hpp"
#include "sugawara.hpp"
