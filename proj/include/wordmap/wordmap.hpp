#pragma once

#include "wordmap/commutator.hpp"
#include "wordmap/counting.hpp"
#include "wordmap/diagonal.hpp"
#include "wordmap/error.hpp"
#include "wordmap/factor.hpp"
#include "wordmap/field.hpp"
#include "wordmap/io.hpp"
#include "wordmap/linalg.hpp"
#include "wordmap/matrix.hpp"
#include "wordmap/poly.hpp"
#include "wordmap/reduction.hpp"
#include "wordmap/word.hpp"
