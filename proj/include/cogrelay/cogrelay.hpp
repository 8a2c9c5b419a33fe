#pragma once
// Umbrella header: the full analytic engine, slot simulator, oracles, and
// experiment/validation drivers.

#include "cogrelay/version.hpp"
#include "cogrelay/params.hpp"
#include "cogrelay/rng.hpp"
#include "cogrelay/model.hpp"
#include "cogrelay/numerics.hpp"
#include "cogrelay/expint.hpp"
#include "cogrelay/closed_form.hpp"
#include "cogrelay/quadrature.hpp"
#include "cogrelay/order_stats.hpp"
#include "cogrelay/policy.hpp"
#include "cogrelay/queue.hpp"
#include "cogrelay/simulator.hpp"
#include "cogrelay/oracle.hpp"
#include "cogrelay/experiment.hpp"
#include "cogrelay/validation.hpp"
