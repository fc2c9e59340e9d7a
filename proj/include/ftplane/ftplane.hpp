#pragma once

#include "ftplane/error.hpp"
#include "ftplane/geometry.hpp"
#include "ftplane/norm.hpp"
#include "ftplane/zonotope.hpp"
#include "ftplane/solver.hpp"
#include "ftplane/uniqueness.hpp"
#include "ftplane/lambda.hpp"
#include "ftplane/oracle.hpp"
#include "ftplane/io.hpp"
#include "ftplane/svg.hpp"
