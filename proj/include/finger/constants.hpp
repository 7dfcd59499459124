// SPDX-License-Identifier: Apache-2.0
#ifndef FINGER_CONSTANTS_HPP
#define FINGER_CONSTANTS_HPP

// Physical constants, CODATA 2018. Internal unit system: energies in eV,
// lengths in Angstrom, masses in amu, times in fs, dipoles in Debye.
// SI values appear only inside rate prefactors.

namespace finger::constants {

/// hbar [eV fs]
inline constexpr double hbar_ev_fs = 0.6582119569;
/// hbar [J s]
inline constexpr double hbar_si = 1.054571817e-34;
/// Planck constant [eV fs]
inline constexpr double planck_ev_fs = 4.135667696;
/// electron mass [kg]
inline constexpr double electron_mass_kg = 9.1093837015e-31;
/// electron mass [amu]
inline constexpr double electron_mass_amu = 5.48579909065e-4;
/// elementary charge [C]
inline constexpr double elementary_charge = 1.602176634e-19;
/// vacuum permittivity [F/m]
inline constexpr double vacuum_permittivity = 8.8541878128e-12;
/// speed of light [m/s]
inline constexpr double speed_of_light = 2.99792458e8;
/// E [eV] * lambda [nm] for a photon
inline constexpr double ev_nm_product = 1239.84198;
/// 1 Debye in C m
inline constexpr double debye_to_si = 3.33564095198e-30;
/// 1 amu in kg
inline constexpr double amu_kg = 1.66053906660e-27;
/// 1 amu A^2 / fs^2 expressed in eV
inline constexpr double amu_A2_fs2_to_ev = amu_kg * 1.0e10 / elementary_charge;
/// Boltzmann constant [eV/K]
inline constexpr double boltzmann_ev_per_k = 8.617333262e-5;
/// Bohr radius [m]
inline constexpr double bohr_radius_m = 5.29177210903e-11;
/// atomic unit of momentum, hbar/a0 [kg m/s]
inline constexpr double atomic_momentum_si = hbar_si / bohr_radius_m;

} // namespace finger::constants

#endif
