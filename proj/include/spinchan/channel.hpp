// channel.hpp — spin-network coupling graphs and their excitation-sector Hamiltonians

#pragma once

#include <Eigen/Dense>

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace spinchan {

enum class Family { Uniform, Modulated, ModifiedA, ModifiedB, Multiarm, Custom };

// Which block of the number-conserving Hamiltonian to materialize: the
// one-excitation sector (N x N) or vacuum + one excitation ((N+1) x (N+1),
// vacuum at index 0 with energy fixed to 0).
enum class Subspace { OneExcitation, ZeroPlusOne };

// One undirected bond; sites are 1-based, i < j, each bond stored once.
struct Edge {
    int i{0};
    int j{0};
    double coupling{0.0};
};

struct ChannelSpec {
    int n_sites{0};
    std::vector<Edge> edges;     // canonical order: sorted by (i, j)
    double field_shift{0.0};     // uniform diagonal added to every one-excitation state
    Family family{Family::Custom};
    std::map<std::string, double> params;
};

// ---------------------------- chain constructors -----------------------------

// N-site chain with identical couplings J on every bond.
ChannelSpec uniform_chain(int n_sites, double j);

// N-site chain with bond n carrying lambda * sqrt(n(N-n)); supports perfect
// mirror transfer at t = pi/(2 lambda) in the absence of decoherence.
ChannelSpec modulated_chain(int n_sites, double lambda);

// Modulated interior, with the first and last bonds replaced by j0.
ChannelSpec modified_chain_a(int n_sites, double lambda, double j0);

// Uniform interior with coupling j, first and last bonds replaced by j0.
ChannelSpec modified_chain_b(int n_sites, double j, double j0);

// Input arm of l1 sites, a hub, and n_arms output arms of l2 sites each.
// Arm couplings follow the modulated profile of an effective chain of length
// l = l1 + l2 + 1; each hub-to-arm bond is scaled by 1/sqrt(n_arms) so the
// symmetric arm combination reproduces that effective chain exactly.
ChannelSpec multiarm(int l1, int l2, int n_arms, double lambda);

// Append one extra site with no bonds (index N+1); original indices unchanged.
ChannelSpec attach_uncoupled_node(ChannelSpec spec);

// Magnetic field b along z on every spin: shifts each one-excitation level by
// 2b relative to the vacuum and leaves all eigenvectors unchanged.
ChannelSpec apply_field(ChannelSpec spec, double b);

// ------------------------------- matrix build --------------------------------

Eigen::MatrixXd build_hamiltonian(const ChannelSpec& spec, Subspace subspace);

// ------------------------------ multiarm layout -------------------------------

// 1-based site index of the hub (= l1 + 1).
int multiarm_hub_site(const ChannelSpec& spec);

// 1-based site index of the last site of output arm `arm` (0-based arm index).
int multiarm_arm_end_site(const ChannelSpec& spec, int arm);

// Rows = orthonormal symmetric-combination basis of the effective chain
// (length l = l1 + l2 + 1) expressed over the multiarm sites, so that
// P * H * P^T is the effective modulated chain Hamiltonian.
Eigen::MatrixXd multiarm_symmetric_projection(const ChannelSpec& spec);

// ------------------------------- serialization -------------------------------

std::string family_name(Family f);
Family family_from_name(const std::string& name);

nlohmann::json to_json(const ChannelSpec& spec);
ChannelSpec channel_from_json(const nlohmann::json& j);

}  // namespace spinchan
