#pragma once

#include <span>
#include <vector>

#include "qclone/dense.hpp"

namespace qclone {

// Amplitude-array kernels. All index arithmetic is big-endian in register
// order (first register varies slowest). The primary implementations are
// OpenMP-parallel; qclone::ref holds straight-line serial versions that the
// tests use as oracles.

std::vector<long long> big_endian_strides(std::span<const int> dims);

/// Offsets of every digit assignment of `regs` (big-endian in the order
/// given), all other digits zero.
std::vector<long long> subset_offsets(std::span<const int> dims,
                                      std::span<const int> regs);

/// out = (op on `targets`, identity elsewhere) applied to in.
void apply_dense(const Matrix& op, std::span<const int> targets,
                 std::span<const int> dims, const Vector& in, Vector& out);

/// Reduced density matrix of `keep` (ascending) from a pure state.
void partial_trace_pure(const Vector& amps, std::span<const int> dims,
                        std::span<const int> keep, Matrix& rho);

/// Reduced density matrix of `keep` (ascending) from a density matrix.
void partial_trace_density(const Matrix& rho_in, std::span<const int> dims,
                           std::span<const int> keep, Matrix& rho_out);

/// Reorder registers: position i of the output takes source register
/// order[i]. dims are the source dims.
void permute_registers(const Vector& in, std::span<const int> dims,
                       std::span<const int> order, Vector& out);

namespace ref {

void apply_dense(const Matrix& op, std::span<const int> targets,
                 std::span<const int> dims, const Vector& in, Vector& out);

void partial_trace_pure(const Vector& amps, std::span<const int> dims,
                        std::span<const int> keep, Matrix& rho);

void permute_registers(const Vector& in, std::span<const int> dims,
                       std::span<const int> order, Vector& out);

}  // namespace ref

}  // namespace qclone
