#ifndef SYMGRAPH_SYMGRAPH_HPP
#define SYMGRAPH_SYMGRAPH_HPP

#include "certificate.hpp"
#include "graphs.hpp"
#include "macaulay.hpp"
#include "matrix.hpp"
#include "monomial.hpp"
#include "operators.hpp"
#include "rational.hpp"
#include "sympoly.hpp"

#endif
