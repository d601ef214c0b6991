#pragma once

#include <string>
#include <vector>

#include "hvcanon/models.hpp"

namespace hvcanon {

// Built-in reference models.
//
// det:    singleton hidden state, point-mass outcomes; satisfies all six
//         properties.
// coin:   two hidden states of mass 1/2 whose point-mass kernels copy the
//         hidden state to both outcomes; satisfies all six properties and
//         realizes the perfectly correlated coin.
// signal: Alice's outcome copies Bob's measurement choice under a single
//         hidden state; violates parameter independence (and locality,
//         strong determinism) while keeping outcome independence, weak
//         determinism, and hidden-variable independence.
// ldep:   hidden state perfectly correlated with Alice's measurement,
//         outcomes trivial; violates only hidden-variable independence.
// pr-box: the no-signaling empirical model with x_a xor x_b = y_a and y_b;
//         CHSH value 4, no local realization.
HVModel scenario_det();
HVModel scenario_coin();
HVModel scenario_signal();
HVModel scenario_ldep();
EmpiricalModel scenario_pr_box();

// Single-context empirical models used by the solver paths: the perfectly
// correlated fair coin and the product of two independent fair coins.
EmpiricalModel scenario_correlated_coin();
EmpiricalModel scenario_product_coins();

// A hidden-state-only violation of outcome independence: the correlated
// coin explained by a single hidden state (locality, outcome independence,
// and both determinisms fail; parameter independence and hidden-variable
// independence hold).
HVModel scenario_oi_violation();

// Names accepted by the command line: det, coin, signal, ldep, pr-box.
std::vector<std::string> scenario_names();

}  // namespace hvcanon
