// Umbrella header: the whole engine, from the algebra catalog to the report
// plumbing, in dependency order.
#pragma once

#include "jacquet/rational.hpp"
#include "jacquet/weight.hpp"
#include "jacquet/matrix.hpp"
#include "jacquet/poly.hpp"
#include "jacquet/groebner.hpp"
#include "jacquet/catalog.hpp"
#include "jacquet/pbw.hpp"
#include "jacquet/enveloping.hpp"
#include "jacquet/series.hpp"
#include "jacquet/spherical.hpp"
#include "jacquet/boundary.hpp"
#include "jacquet/analysis.hpp"
#include "jacquet/report.hpp"
#include "jacquet/cache.hpp"
#include "jacquet/cli.hpp"
