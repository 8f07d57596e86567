#pragma once

#include "joinwidth/error.hpp"
#include "joinwidth/varset.hpp"
#include "joinwidth/relation.hpp"
#include "joinwidth/instance.hpp"
#include "joinwidth/width.hpp"
#include "joinwidth/decomposition.hpp"
#include "joinwidth/engines.hpp"
#include "joinwidth/classes.hpp"
#include "joinwidth/generators.hpp"
#include "joinwidth/oracle.hpp"
#include "joinwidth/io.hpp"
#include "joinwidth/bench.hpp"
