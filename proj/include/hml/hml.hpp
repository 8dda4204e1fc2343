#pragma once

#include "hml/arith.hpp"
#include "hml/commands.hpp"
#include "hml/dirichlet.hpp"
#include "hml/error.hpp"
#include "hml/fixture.hpp"
#include "hml/forms.hpp"
#include "hml/oracle.hpp"
#include "hml/quadfield.hpp"
#include "hml/satotate.hpp"
#include "hml/zeta.hpp"
