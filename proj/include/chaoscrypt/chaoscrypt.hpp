#pragma once

#include "chaoscrypt/analysis.hpp"
#include "chaoscrypt/chaos.hpp"
#include "chaoscrypt/cipher.hpp"
#include "chaoscrypt/hex.hpp"
#include "chaoscrypt/nonlinear.hpp"
#include "chaoscrypt/report.hpp"
