#pragma once

#include "mapgeo/common.hpp"
#include "mapgeo/geometry.hpp"
#include "mapgeo/angle_function.hpp"
#include "mapgeo/map_core.hpp"
#include "mapgeo/mline.hpp"
#include "mapgeo/polygon.hpp"
#include "mapgeo/bundles.hpp"
#include "mapgeo/enumeration.hpp"
#include "mapgeo/pseudo_plane.hpp"
#include "mapgeo/io.hpp"
#include "mapgeo/svg.hpp"
