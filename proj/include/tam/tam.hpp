#pragma once

// Everything except the HTTP transport (tam/http.hpp), which needs cpp-httplib.
#include "tam/assembly.hpp"
#include "tam/binding_graph.hpp"
#include "tam/exploration.hpp"
#include "tam/frontier.hpp"
#include "tam/geometry.hpp"
#include "tam/io.hpp"
#include "tam/minimizer.hpp"
#include "tam/sequence.hpp"
#include "tam/session.hpp"
#include "tam/svg.hpp"
#include "tam/tile_system.hpp"
