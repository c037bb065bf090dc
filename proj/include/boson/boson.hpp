#pragma once

#include <boson/dynamics.hpp>
#include <boson/errors.hpp>
#include <boson/expression.hpp>
#include <boson/fock.hpp>
#include <boson/format.hpp>
#include <boson/normal_polynomial.hpp>
#include <boson/ordering.hpp>
#include <boson/rational.hpp>
#include <boson/spectrum.hpp>
#include <boson/verify.hpp>
