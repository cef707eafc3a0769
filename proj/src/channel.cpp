#include "spinchan/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinchan {

namespace {

void check_sites(int n_sites, int minimum, const char* who) {
    if (n_sites < minimum) {
        throw std::invalid_argument(std::string(who) + ": need at least " +
                                    std::to_string(minimum) + " sites, got " +
                                    std::to_string(n_sites));
    }
}

void sort_edges(std::vector<Edge>& edges) {
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
}

double modulated_coupling(int bond, int length, double lambda) {
    return lambda * std::sqrt(static_cast<double>(bond) * (length - bond));
}

}  // namespace

// ---------------------------- chain constructors -----------------------------

ChannelSpec uniform_chain(int n_sites, double j) {
    check_sites(n_sites, 2, "uniform_chain");
    if (j == 0.0) {
        throw std::invalid_argument("uniform_chain: coupling must be nonzero");
    }
    ChannelSpec spec;
    spec.n_sites = n_sites;
    spec.family = Family::Uniform;
    spec.params["j"] = j;
    for (int n = 1; n < n_sites; ++n) {
        spec.edges.push_back({n, n + 1, j});
    }
    return spec;
}

ChannelSpec modulated_chain(int n_sites, double lambda) {
    check_sites(n_sites, 2, "modulated_chain");
    if (lambda <= 0.0) {
        throw std::invalid_argument("modulated_chain: lambda must be positive");
    }
    ChannelSpec spec;
    spec.n_sites = n_sites;
    spec.family = Family::Modulated;
    spec.params["lambda"] = lambda;
    for (int n = 1; n < n_sites; ++n) {
        spec.edges.push_back({n, n + 1, modulated_coupling(n, n_sites, lambda)});
    }
    return spec;
}

ChannelSpec modified_chain_a(int n_sites, double lambda, double j0) {
    check_sites(n_sites, 4, "modified_chain_a");
    if (lambda <= 0.0) {
        throw std::invalid_argument("modified_chain_a: lambda must be positive");
    }
    if (j0 < 0.0) {
        throw std::invalid_argument("modified_chain_a: end coupling must be >= 0");
    }
    ChannelSpec spec;
    spec.n_sites = n_sites;
    spec.family = Family::ModifiedA;
    spec.params["lambda"] = lambda;
    spec.params["j0"] = j0;
    for (int n = 1; n < n_sites; ++n) {
        const bool end_bond = (n == 1 || n == n_sites - 1);
        spec.edges.push_back(
            {n, n + 1, end_bond ? j0 : modulated_coupling(n, n_sites, lambda)});
    }
    return spec;
}

ChannelSpec modified_chain_b(int n_sites, double j, double j0) {
    check_sites(n_sites, 4, "modified_chain_b");
    if (j <= 0.0) {
        throw std::invalid_argument("modified_chain_b: bulk coupling must be positive");
    }
    if (j0 < 0.0) {
        throw std::invalid_argument("modified_chain_b: end coupling must be >= 0");
    }
    ChannelSpec spec;
    spec.n_sites = n_sites;
    spec.family = Family::ModifiedB;
    spec.params["j"] = j;
    spec.params["j0"] = j0;
    for (int n = 1; n < n_sites; ++n) {
        const bool end_bond = (n == 1 || n == n_sites - 1);
        spec.edges.push_back({n, n + 1, end_bond ? j0 : j});
    }
    return spec;
}

ChannelSpec multiarm(int l1, int l2, int n_arms, double lambda) {
    if (l1 < 1 || l2 < 1) {
        throw std::invalid_argument("multiarm: arm lengths must be >= 1");
    }
    if (n_arms < 2) {
        throw std::invalid_argument("multiarm: need at least 2 output arms");
    }
    if (lambda <= 0.0) {
        throw std::invalid_argument("multiarm: lambda must be positive");
    }
    const int l = l1 + l2 + 1;  // effective chain length
    const int hub = l1 + 1;
    ChannelSpec spec;
    spec.n_sites = l1 + n_arms * l2 + 1;
    spec.family = Family::Multiarm;
    spec.params["l1"] = l1;
    spec.params["l2"] = l2;
    spec.params["n_arms"] = n_arms;
    spec.params["lambda"] = lambda;

    // input arm up to the hub: effective bonds 1..l1
    for (int n = 1; n <= l1; ++n) {
        spec.edges.push_back({n, n + 1, modulated_coupling(n, l, lambda)});
    }
    // output arms: sites of arm a are hub+1 + a*l2 .. hub + (a+1)*l2
    for (int a = 0; a < n_arms; ++a) {
        const int first = hub + 1 + a * l2;
        spec.edges.push_back(
            {hub, first, modulated_coupling(l1 + 1, l, lambda) / std::sqrt(n_arms)});
        for (int m = 1; m < l2; ++m) {
            spec.edges.push_back(
                {first + m - 1, first + m, modulated_coupling(l1 + 1 + m, l, lambda)});
        }
    }
    sort_edges(spec.edges);
    return spec;
}

ChannelSpec attach_uncoupled_node(ChannelSpec spec) {
    spec.n_sites += 1;
    return spec;
}

ChannelSpec apply_field(ChannelSpec spec, double b) {
    spec.field_shift += 2.0 * b;
    return spec;
}

// ------------------------------- matrix build --------------------------------

Eigen::MatrixXd build_hamiltonian(const ChannelSpec& spec, Subspace subspace) {
    if (spec.n_sites < 1) {
        throw std::invalid_argument("build_hamiltonian: empty channel");
    }
    const int n = spec.n_sites;
    const int offset = (subspace == Subspace::ZeroPlusOne) ? 1 : 0;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n + offset, n + offset);
    for (int s = 0; s < n; ++s) {
        h(s + offset, s + offset) = spec.field_shift;
    }
    for (const Edge& e : spec.edges) {
        if (e.i < 1 || e.j < 1 || e.i > n || e.j > n || e.i == e.j) {
            throw std::invalid_argument("build_hamiltonian: edge references invalid site");
        }
        h(e.i - 1 + offset, e.j - 1 + offset) = e.coupling;
        h(e.j - 1 + offset, e.i - 1 + offset) = e.coupling;
    }
    return h;
}

// ------------------------------ multiarm layout -------------------------------

namespace {

void require_multiarm(const ChannelSpec& spec, const char* who) {
    if (spec.family != Family::Multiarm) {
        throw std::invalid_argument(std::string(who) + ": not a multiarm channel");
    }
}

}  // namespace

int multiarm_hub_site(const ChannelSpec& spec) {
    require_multiarm(spec, "multiarm_hub_site");
    return static_cast<int>(spec.params.at("l1")) + 1;
}

int multiarm_arm_end_site(const ChannelSpec& spec, int arm) {
    require_multiarm(spec, "multiarm_arm_end_site");
    const int l1 = static_cast<int>(spec.params.at("l1"));
    const int l2 = static_cast<int>(spec.params.at("l2"));
    const int n_arms = static_cast<int>(spec.params.at("n_arms"));
    if (arm < 0 || arm >= n_arms) {
        throw std::invalid_argument("multiarm_arm_end_site: arm index out of range");
    }
    return l1 + 1 + (arm + 1) * l2;
}

Eigen::MatrixXd multiarm_symmetric_projection(const ChannelSpec& spec) {
    require_multiarm(spec, "multiarm_symmetric_projection");
    const int l1 = static_cast<int>(spec.params.at("l1"));
    const int l2 = static_cast<int>(spec.params.at("l2"));
    const int n_arms = static_cast<int>(spec.params.at("n_arms"));
    const int l = l1 + l2 + 1;
    const int hub = l1 + 1;
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(l, spec.n_sites);
    for (int n = 1; n <= hub; ++n) {
        p(n - 1, n - 1) = 1.0;  // input arm and hub pass through unchanged
    }
    const double w = 1.0 / std::sqrt(static_cast<double>(n_arms));
    for (int m = 1; m <= l2; ++m) {
        for (int a = 0; a < n_arms; ++a) {
            p(hub + m - 1, hub + a * l2 + m - 1) = w;
        }
    }
    return p;
}

// ------------------------------- serialization -------------------------------

std::string family_name(Family f) {
    switch (f) {
        case Family::Uniform: return "uniform";
        case Family::Modulated: return "modulated";
        case Family::ModifiedA: return "modified-a";
        case Family::ModifiedB: return "modified-b";
        case Family::Multiarm: return "multiarm";
        case Family::Custom: return "custom";
    }
    throw std::logic_error("family_name: unreachable");
}

Family family_from_name(const std::string& name) {
    if (name == "uniform") return Family::Uniform;
    if (name == "modulated") return Family::Modulated;
    if (name == "modified-a") return Family::ModifiedA;
    if (name == "modified-b") return Family::ModifiedB;
    if (name == "multiarm") return Family::Multiarm;
    if (name == "custom") return Family::Custom;
    throw std::invalid_argument("unknown channel family: " + name);
}

nlohmann::json to_json(const ChannelSpec& spec) {
    nlohmann::json j;
    j["family"] = family_name(spec.family);
    j["n_sites"] = spec.n_sites;
    j["params"] = spec.params;
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : spec.edges) {
        edges.push_back({e.i, e.j, e.coupling});
    }
    j["edges"] = edges;
    j["field"] = spec.field_shift / 2.0;
    return j;
}

ChannelSpec channel_from_json(const nlohmann::json& j) {
    ChannelSpec spec;
    spec.family = family_from_name(j.at("family").get<std::string>());
    spec.n_sites = j.at("n_sites").get<int>();
    if (j.contains("params")) {
        spec.params = j.at("params").get<std::map<std::string, double>>();
    }
    for (const auto& e : j.at("edges")) {
        spec.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
    }
    sort_edges(spec.edges);
    spec.field_shift = 2.0 * j.value("field", 0.0);
    return spec;
}

}  // namespace spinchan
