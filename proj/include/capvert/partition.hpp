#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace capvert {

/// Weakly decreasing positive parts; the empty vector is the empty partition.
using Partition = std::vector<int>;

/// Zero-based cell: row r indexes the part, column c the position in it.
struct Box {
  int r;
  int c;
};

/// All partitions of n in reverse lexicographic order: (n), (n-1,1), ...
std::vector<Partition> partitions(int n);

int size(const Partition& p);
Partition conjugate(const Partition& p);
std::vector<Box> boxes(const Partition& p);
int arm(const Partition& p, const Box& b);
int leg(const Partition& p, const Partition& conj, const Box& b);
/// n(p) = sum_i (i-1) p_i.
int n_of(const Partition& p);
/// z_p = prod_k k^{m_k} m_k!.
mpz_class z_of(const Partition& p);
/// True iff p dominates q (same size).
bool dominates(const Partition& p, const Partition& q);
/// Merges parts of two partitions.
Partition join(const Partition& p, const Partition& q);
bool is_partition(const std::vector<int>& parts);

/// "3,1,1"; the empty partition renders as "∅".
std::string to_string(const Partition& p);

}  // namespace capvert
