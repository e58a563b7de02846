#pragma once

#include "raagsep/bench.hpp"
#include "raagsep/completion.hpp"
#include "raagsep/cube_complex.hpp"
#include "raagsep/dot_export.hpp"
#include "raagsep/errors.hpp"
#include "raagsep/folding.hpp"
#include "raagsep/graph.hpp"
#include "raagsep/json_io.hpp"
#include "raagsep/matrix.hpp"
#include "raagsep/membership.hpp"
#include "raagsep/representation.hpp"
#include "raagsep/separation.hpp"
#include "raagsep/words.hpp"
