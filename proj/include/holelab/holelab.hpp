#pragma once

#include "holelab/bounds.hpp"
#include "holelab/certificate.hpp"
#include "holelab/connector.hpp"
#include "holelab/edge_list.hpp"
#include "holelab/errors.hpp"
#include "holelab/experiment.hpp"
#include "holelab/exposure.hpp"
#include "holelab/forest.hpp"
#include "holelab/graph.hpp"
#include "holelab/log_value.hpp"
#include "holelab/oracle.hpp"
#include "holelab/rng.hpp"
#include "holelab/vertex_set.hpp"
