#pragma once

#include "cyclotomic.hpp"
#include "polynomial.hpp"
#include "matrix.hpp"
#include "characters.hpp"
#include "eisspace.hpp"
#include "hecke.hpp"
#include "lattices.hpp"
#include "fourier.hpp"
#include "verify.hpp"
#include "json_io.hpp"
