#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "core/braid_word.hpp"
#include "core/json_io.hpp"
#include "core/twisted_double.hpp"

namespace zestlab {

// A cyclic ribbon zesting datum for grading group Z_N: residues a, b with
// a = 2b (mod N) and a root of unity s with s^N * zeta_{2N}^{2b} = 1.
struct ZestParams {
  int N = 0;
  int a = 0;
  int b = 0;
  CycNum s;
};

// Throws std::runtime_error if the constraints above fail.
void validate_zest_params(const ZestParams& zp);

// The canonical family member indexed by u: (a, b, s) =
// (2u mod N, u mod N, zeta_{N^2}^{-u}).
ZestParams canonical_zest_params(int N, int u);

// All N canonical zestings, u = 0..N-1.
std::vector<ZestParams> enumerate_zestings(int N);

// Parameter group: composition adds (a, b) and multiplies s; both results
// are validated.
ZestParams compose(const ZestParams& x, const ZestParams& y);
ZestParams invert(const ZestParams& x);

bool zest_params_equal(const ZestParams& x, const ZestParams& y);

// {"N":.., "a":.., "b":.., "s": {cyclotomic}}
nlohmann::json zest_params_to_json(const ZestParams& zp);
ZestParams zest_params_from_json(const nlohmann::json& j);

// The structure constants of the zesting on gradings i, j, k in Z_N:
// lambda_a is the grading-level carry a*[i+j>=N]; lambda_b the associator
// phase zeta_{2N}^{2bk[i+j>=N]}; t the braiding phase s^{-ij}; f the twist
// phase s^{-i^2}.
struct ZestData {
  int lambda_a = 0;
  CycNum lambda_b;
  CycNum t;
  CycNum f;
};
ZestData zest_data(const ZestParams& zp, int i, int j, int k);

// S'_{XY} = s^{2 g_X g_Y} S_{XY},  T'_X = s^{-g_X^2} T_X  on the same labels.
ModularData zest_modular_data(const ModularData& md, const ZestParams& zp);
ModularDataF zest_modular_data(const ModularDataF& md, const ZestParams& zp);

// The exact phase by which a colored 3-strand closure invariant changes
// under the zesting: one t^sign per crossing, an associator ratio per
// sigma_2 move, and a twist factor f^c per component for the framing
// correction exponents c of the descriptor. `gradings` lists the grading of
// the color attached to each starting strand (constant on components).
CycNum zest_link_scalar(const LinkDescriptor& d, const ZestParams& zp,
                        const std::vector<int>& gradings);

}  // namespace zestlab
