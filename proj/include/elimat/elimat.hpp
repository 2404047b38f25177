#pragma once

// Everything except the acceptance suite and the job runner.
#include <elimat/congruence.hpp>
#include <elimat/fiber.hpp>
#include <elimat/implicitize.hpp>
#include <elimat/matrixrep.hpp>
#include <elimat/oracle.hpp>
