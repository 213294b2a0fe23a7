#ifndef GENDECOMP_RECIPES_HPP
#define GENDECOMP_RECIPES_HPP

#include "gendecomp/recipes/ca.hpp"
#include "gendecomp/recipes/mds.hpp"
#include "gendecomp/recipes/pca.hpp"
#include "gendecomp/recipes/preprocess.hpp"
#include "gendecomp/recipes/two_table.hpp"

#endif // GENDECOMP_RECIPES_HPP
