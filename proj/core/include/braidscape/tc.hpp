#pragma once

#include "braidscape/arcs.hpp"
#include "braidscape/cells.hpp"
#include "braidscape/clouds.hpp"
#include "braidscape/cohomology.hpp"
#include "braidscape/tree.hpp"

#include <optional>
#include <string>
#include <vector>

namespace braidscape {

enum class TcCase {
  TrivialN1,     // one point: the tree itself, contractible
  IntervalM0,    // no essential vertices
  Statement1,    // n >= 2m + k
  Case2a,        // n < 2m, s >= 2(q-r)
  Case2bEven,    // n < 2m, arcs with essential endpoints
  Case2bOdd,     // n < 2m, odd, with A_0
};

enum class NaReason {
  None,
  BelowStatement1Threshold,  // 2m <= n < 2m+k
  NoCase2Certificate,        // n < 2m and no qualifying arc certificate
  ConnectivityFailure,       // ordered space disconnected (reported per space)
};

struct TcCertificate {
  bool determined = false;
  int value = 0;
  TcCase tc_case = TcCase::TrivialN1;
  NaReason reason = NaReason::None;

  std::optional<ArcCertificate> arc_cert;  // in the numbering of `subdivided`
  std::optional<Cell> phi, psi;            // critical top-cells on `subdivided`
  std::vector<CloudDiagram> phi_factors, psi_factors;
  int top_dim = 0;
  int lower_bound = 0;  // verified zero-divisor product length
  int upper_bound = 0;  // 2*top_dim + 1

  bool applies_unordered = true;
  bool applies_ordered = true;
  std::string ordered_note;
  std::string diagnostics;
};

struct TcResult {
  TcCertificate cert;
  Tree subdivided;
  int n = 0;
};

struct TcOptions {
  std::uint64_t cell_cap = default_cell_cap();
  ArcSearchCaps arc_caps;
};

/// The full decision procedure: subdivide, pick the applicable clause,
/// search for witnesses, build the critical-cell pair and verify the pinch.
TcResult decide_tc(const Tree& input, int n, const TcOptions& opts = {});

/// Maps a certificate found on one tree onto a finer subdivision of it
/// (vertices keep their ids; arcs expand along the inserted chains).
ArcCertificate map_certificate(const OrderedTree& from, const OrderedTree& to,
                               const ArcCertificate& cert);

/// The proof construction: the pair of critical cells seeded by the arc
/// certificate.  Throws when the certificate is inconsistent with the tree.
std::pair<Cell, Cell> build_phi_psi(const OrderedTree& ot, int n, const ArcCertificate& cert);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> checks;  // "ok: ..." / "FAIL: ..." lines

  void pass(const std::string& what);
  void fail(const std::string& what);
};

/// Independent re-verification of a Determined certificate: criticality of
/// phi/psi, pairwise distinct factor classes, nonzero zero-divisor product,
/// and the structural upper bound.
VerifyReport verify_certificate(const OrderedTree& ot, int n, const TcCertificate& cert,
                                std::uint64_t cap = default_cell_cap());

const char* tc_case_name(TcCase c);
const char* na_reason_name(NaReason r);

}  // namespace braidscape
