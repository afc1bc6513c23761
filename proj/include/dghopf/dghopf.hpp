#ifndef DGHOPF_DGHOPF_HPP
#define DGHOPF_DGHOPF_HPP

#include "field.hpp"
#include "graded.hpp"
#include "hopf.hpp"
#include "examples.hpp"
#include "resolutions.hpp"
#include "linalg.hpp"
#include "cochains.hpp"
#include "cohomology.hpp"
#include "harrison.hpp"
#include "deformation.hpp"
#include "io.hpp"

#endif
