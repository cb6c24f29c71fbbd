#pragma once

// Physical wax deposition parameters mapped to the dimensionless (eps, k)
// and the temperature, length and time scales.

#include <cmath>
#include <string>

#include "waxfront/errors.hpp"

namespace waxfront {

/// SI units throughout.
struct PhysicalInputs {
  double c_w = 2000.0;   ///< wax specific heat, J/(kg K)
  double H_w = 2.0e5;    ///< wax latent heat, J/kg
  double rho_w = 900.0;  ///< wax density, kg/m^3
  double k_w_h = 0.25;   ///< wax conductivity at T_h, W/(m K)
  double T_c = 0.0;      ///< coolant temperature
  double T_h = 10.0;     ///< wax appearance temperature
  double T_o = 13.3;     ///< bulk oil temperature
  double k_p = 16.0;     ///< pipe wall conductivity
  double k_c = 0.6;      ///< coolant conductivity
  double Nu_c = 100.0;   ///< coolant Nusselt number
  double d_c = 0.2;      ///< coolant jacket width, m
  double d_p = 0.005;    ///< pipe wall thickness, m
  double k_o = 0.13;     ///< oil conductivity
  double Nu = 3.66;      ///< oil-side Nusselt number
  double R = 0.1;        ///< pipe radius, m
};

struct DimensionlessGroups {
  double eps = 0.0;
  double k = 0.0;
  double T_s = 0.0;  ///< T_h - T_c
  double x_s = 0.0;
  double t_s = 0.0;
};

inline DimensionlessGroups dimensional_to_dimensionless(const PhysicalInputs& p) {
  const std::pair<const char*, double> positive[] = {
      {"c_w", p.c_w}, {"H_w", p.H_w}, {"rho_w", p.rho_w}, {"k_w_h", p.k_w_h}, {"k_p", p.k_p},
      {"k_c", p.k_c}, {"Nu_c", p.Nu_c}, {"d_c", p.d_c},   {"d_p", p.d_p},     {"k_o", p.k_o},
      {"Nu", p.Nu},   {"R", p.R}};
  for (const auto& [name, value] : positive) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw InvalidPhysical(std::string(name) + " must be positive and finite");
    }
  }
  if (!(p.T_c < p.T_h && p.T_h < p.T_o)) {
    throw InvalidPhysical("temperatures must satisfy T_c < T_h < T_o");
  }
  const double dT = p.T_h - p.T_c;
  const double dT_o = p.T_o - p.T_h;
  const double oil_flux = p.k_o * p.Nu * dT_o;  // times 1/R
  DimensionlessGroups g;
  g.T_s = dT;
  g.x_s = p.R * p.k_w_h * dT / oil_flux;
  g.t_s = p.R * p.R * p.rho_w * p.H_w * p.k_w_h * dT / (oil_flux * oil_flux);
  g.eps = p.c_w * dT / p.H_w;
  g.k = p.k_p * p.k_c * p.Nu_c * p.R * dT /
        (p.k_o * p.Nu * (p.k_p * p.d_c + p.k_c * p.Nu_c * p.d_p) * dT_o);
  return g;
}

}  // namespace waxfront
