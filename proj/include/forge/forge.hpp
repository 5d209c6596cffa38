#pragma once

#include "automorphism.hpp"
#include "caps.hpp"
#include "catalog.hpp"
#include "certificate.hpp"
#include "error.hpp"
#include "frobenius.hpp"
#include "groups.hpp"
#include "hom.hpp"
#include "intravariance.hpp"
#include "io.hpp"
#include "lifting.hpp"
#include "linfield/canonical_form.hpp"
#include "linfield/field.hpp"
#include "linfield/matrix.hpp"
#include "linfield/norm.hpp"
#include "linfield/poly.hpp"
#include "linfield/projective.hpp"
#include "normal.hpp"
#include "numtheory.hpp"
#include "perm.hpp"
#include "perm_group.hpp"
#include "quotient.hpp"
#include "sylow.hpp"
#include "towers.hpp"
