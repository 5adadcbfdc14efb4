#pragma once

#include "nc11/analysis.hpp"
#include "nc11/bounds.hpp"
#include "nc11/coding.hpp"
#include "nc11/error.hpp"
#include "nc11/figures.hpp"
#include "nc11/format.hpp"
#include "nc11/instance.hpp"
#include "nc11/instance_io.hpp"
#include "nc11/matching.hpp"
#include "nc11/oracle.hpp"
#include "nc11/path.hpp"
#include "nc11/power.hpp"
#include "nc11/routing.hpp"
#include "nc11/topology.hpp"
