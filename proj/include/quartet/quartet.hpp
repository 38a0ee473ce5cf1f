#pragma once

#include "quartet/dynamics.hpp"
#include "quartet/error.hpp"
#include "quartet/hamiltonian.hpp"
#include "quartet/hopf.hpp"
#include "quartet/linalg.hpp"
#include "quartet/optimizer.hpp"
#include "quartet/oracle.hpp"
#include "quartet/triples.hpp"
