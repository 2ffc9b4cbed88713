#ifndef LCOH_LCOH_HPP
#define LCOH_LCOH_HPP

#include <lcoh/blocks.hpp>
#include <lcoh/cech.hpp>
#include <lcoh/dvr_module.hpp>
#include <lcoh/error.hpp>
#include <lcoh/field_oracle.hpp>
#include <lcoh/ideal.hpp>
#include <lcoh/linalg.hpp>
#include <lcoh/matrix.hpp>
#include <lcoh/report.hpp>
#include <lcoh/scalar.hpp>

#endif
