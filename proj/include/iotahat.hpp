#pragma once

#include "iotahat/gf2.hpp"
#include "iotahat/graded.hpp"
#include "iotahat/towers.hpp"
#include "iotahat/complex.hpp"
#include "iotahat/params.hpp"
#include "iotahat/paired_tensor.hpp"
#include "iotahat/morphism.hpp"
#include "iotahat/representative.hpp"
#include "iotahat/catalog.hpp"
#include "iotahat/io.hpp"
