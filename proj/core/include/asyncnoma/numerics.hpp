#pragma once

#include "asyncnoma/eigen.hpp"
#include "asyncnoma/gram_schmidt.hpp"
#include "asyncnoma/hull.hpp"
#include "asyncnoma/roots.hpp"
