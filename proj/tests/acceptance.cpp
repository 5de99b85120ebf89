// Acceptance suite: desk-scale property checks over seeded random channels.
// Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "channelforge/channel_file.hpp"
#include "channelforge/eig.hpp"
#include "channelforge/errors.hpp"
#include "channelforge/random.hpp"
#include "channelforge/transforms.hpp"

using namespace channelforge;

namespace {

int g_failures = 0;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void report(int id, const char* name, bool pass, const std::string& detail) {
    std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << name << " ("
              << detail << ")\n";
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(3) << std::scientific << v;
    return os.str();
}

// 200 seeded CPTP channels cycling d = 2,3,4 and Kraus rank 1..d^2.
std::vector<StinespringRep> sample_channels(int count) {
    std::vector<StinespringRep> out;
    out.reserve(count);
    const std::size_t dims[] = {2, 3, 4};
    for (int i = 0; i < count; ++i) {
        const std::size_t d = dims[i % 3];
        const std::size_t rank = 1 + static_cast<std::size_t>(i / 3) % (d * d);
        Rng rng(1000 + static_cast<std::uint64_t>(i));
        out.push_back(random_cptp(d, d, rank, rng));
    }
    return out;
}

OperatorBasis chi_basis_for(std::size_t d) {
    if ((d & (d - 1)) == 0 && d >= 2) {
        std::size_t n = 0;
        for (std::size_t k = d; k > 1; k /= 2) ++n;
        return OperatorBasis::pauli(n);
    }
    return OperatorBasis::elementary(d, d);
}

void criterion_1_commuting_diagram(const std::vector<StinespringRep>& channels) {
    Timer timer;
    double worst = 0.0;
    for (const auto& se : channels) {
        const KrausRep kraus = sysenv_to_kraus(se);
        const ChoiMatrix choi_direct = sysenv_to_choi(se);
        const KrausRep canon = choi_to_kraus(choi_direct);
        const StinespringRep dilated = kraus_to_stinespring(kraus);
        const OperatorBasis basis = chi_basis_for(se.dx());

        // Every implemented path into the superoperator...
        const std::vector<CMatrix> sops = {
            sysenv_to_superop(se).mat(),
            kraus_to_superop(kraus).mat(),
            choi_to_superop(choi_direct).mat(),
            choi_to_superop(kraus_to_choi(kraus)).mat(),
            kraus_to_superop(canon).mat(),
            sysenv_to_superop(dilated).mat(),
            choi_to_superop(chi_to_choi(choi_to_chi(choi_direct, basis))).mat(),
        };
        // ...and into the Choi matrix.
        const std::vector<CMatrix> chois = {
            choi_direct.mat(),
            kraus_to_choi(kraus).mat(),
            superop_to_choi(sysenv_to_superop(se)).mat(),
            kraus_to_choi(canon).mat(),
            sysenv_to_choi(dilated).mat(),
            chi_to_choi(choi_to_chi(choi_direct, basis)).mat(),
        };
        for (const auto& group : {sops, chois}) {
            for (std::size_t a = 0; a < group.size(); ++a) {
                for (std::size_t b = a + 1; b < group.size(); ++b) {
                    worst = std::max(worst, max_abs_diff(group[a], group[b]));
                }
            }
        }
    }
    const double elapsed = timer.seconds();
    report(1, "commuting diagram", worst <= 1e-9 && elapsed < 30.0,
           "max pairwise deviation " + fmt(worst) + ", " + fmt(elapsed) + " s");
}

void criterion_2_evolution_equivalence(const std::vector<StinespringRep>& channels) {
    double worst = 0.0;
    double worst_trace = 0.0;
    for (std::size_t ci = 0; ci < channels.size(); ++ci) {
        const StinespringRep& se = channels[ci];
        const KrausRep kraus = sysenv_to_kraus(se);
        const SuperOp sop = kraus_to_superop(kraus);
        const ChoiMatrix choi = kraus_to_choi(kraus);
        const ChiMatrix chi = choi_to_chi(choi, chi_basis_for(se.dx()));
        Rng rng(20000 + static_cast<std::uint64_t>(ci));
        for (int s = 0; s < 10; ++s) {
            const DensityMatrix rho = random_state(se.dx(), rng);
            const CMatrix routes[] = {
                apply_kraus(kraus, rho).mat(),   apply_superop(sop, rho).mat(),
                apply_choi(choi, rho).mat(),     apply_chi(chi, rho).mat(),
                apply_sysenv(se, rho).mat(),
            };
            for (int a = 0; a < 5; ++a) {
                for (int b = a + 1; b < 5; ++b) {
                    worst = std::max(worst, max_abs_diff(routes[a], routes[b]));
                }
                worst_trace =
                    std::max(worst_trace, std::abs(trace(routes[a]) - complexd(1.0)));
            }
        }
    }
    report(2, "evolution equivalence", worst <= 1e-9 && worst_trace <= 1e-10,
           "max route deviation " + fmt(worst) + ", max trace defect " + fmt(worst_trace));
}

void criterion_3_round_trips(const std::vector<StinespringRep>& channels) {
    bool reshuffle_exact = true;
    double worst_kraus = 0.0;
    double worst_chi = 0.0;
    for (const auto& se : channels) {
        const SuperOp sop = sysenv_to_superop(se);
        const BipartiteShape shape(se.dx(), se.dy());
        if (reshuffle_row(reshuffle_row(sop.mat(), shape), shape) != sop.mat() ||
            reshuffle_col(reshuffle_col(sysenv_to_choi(se).mat(), shape), shape) !=
                sysenv_to_choi(se).mat()) {
            reshuffle_exact = false;
        }
        const ChoiMatrix choi = superop_to_choi(sop);
        worst_kraus =
            std::max(worst_kraus, max_abs_diff(kraus_to_choi(choi_to_kraus(choi)).mat(),
                                               choi.mat()));
        const ChiMatrix chi = choi_to_chi(choi, chi_basis_for(se.dx()));
        worst_chi = std::max(worst_chi, max_abs_diff(chi_to_choi(chi).mat(), choi.mat()));
    }
    report(3, "Choi-level round trips",
           reshuffle_exact && worst_kraus <= 1e-10 && worst_chi <= 1e-12,
           std::string("reshuffle ") + (reshuffle_exact ? "exact" : "NOT exact") +
               ", kraus round trip " + fmt(worst_kraus) + ", chi round trip " + fmt(worst_chi));
}

void criterion_4_canonical_kraus(const std::vector<StinespringRep>& channels) {
    double worst_orth = 0.0;
    double worst_complete = 0.0;
    bool ranks_match = true;
    for (const auto& se : channels) {
        const ChoiMatrix choi = sysenv_to_choi(se);
        const KrausRep canon = choi_to_kraus(choi);
        const EigenDecomposition eig = eig_hermitian(choi.mat());
        for (std::size_t a = 0; a < canon.count(); ++a) {
            for (std::size_t b = 0; b < canon.count(); ++b) {
                const complexd g = trace(adjoint(canon.op(a)) * canon.op(b));
                const complexd want = a == b ? complexd(eig.eigenvalues[a]) : complexd(0.0);
                worst_orth = std::max(worst_orth, std::abs(g - want));
            }
        }
        worst_complete = std::max(worst_complete, tp_defect(canon));
        std::size_t rank = 0;
        for (double v : eig.eigenvalues) {
            if (v > 1e-12 * eig.eigenvalues.front()) ++rank;
        }
        if (rank != canon.count()) ranks_match = false;
    }
    report(4, "canonical Kraus contract",
           worst_orth <= 1e-10 && worst_complete <= 1e-9 && ranks_match,
           "orthogonality defect " + fmt(worst_orth) + ", completeness defect " +
               fmt(worst_complete) + (ranks_match ? ", ranks match" : ", RANK MISMATCH"));
}

void criterion_5_cp_discrimination(const std::vector<StinespringRep>& channels) {
    // The transpose map in every representation route.
    const SuperOp transpose_sop(swap_matrix(2, 2), VecConvention::col(), 2, 2);
    const ChoiMatrix transpose_choi = superop_to_choi(transpose_sop);
    const ChiMatrix transpose_chi = choi_to_chi(transpose_choi, OperatorBasis::pauli(1));
    const bool rejected = !is_cp(transpose_sop) && !is_cp(transpose_choi) &&
                          !is_cp(transpose_chi);
    const double witness = cp_min_eigenvalue(transpose_choi);
    const bool witness_ok = std::abs(witness + 1.0) <= 1e-10;

    int accepted = 0;
    for (const auto& se : channels) {
        const ChoiMatrix choi = sysenv_to_choi(se);
        if (is_cp(choi) && is_cp(sysenv_to_superop(se)) && is_cp(se)) ++accepted;
    }
    report(5, "CP discrimination",
           rejected && witness_ok && accepted == static_cast<int>(channels.size()),
           "transpose witness " + fmt(witness) + ", accepted " + std::to_string(accepted) + "/" +
               std::to_string(channels.size()));
}

void criterion_6_vectorization_identities() {
    std::mt19937_64 gen(600);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::uniform_int_distribution<int> idist(-4, 4);
    const std::size_t dims[] = {2, 3, 4};

    double worst_roth = 0.0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t d = dims[i % 3];
        CMatrix a(d, d), b(d, d), c(d, d);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t cc = 0; cc < d; ++cc) {
                a(r, cc) = complexd(dist(gen), dist(gen));
                b(r, cc) = complexd(dist(gen), dist(gen));
                c(r, cc) = complexd(dist(gen), dist(gen));
            }
        }
        const CVector direct = vec(a * b * c, VecConvention::col());
        const CVector lifted = kron(transpose(c), a) * vec(b, VecConvention::col());
        worst_roth = std::max(worst_roth, max_abs_diff(direct, lifted));
    }

    bool bell_forms_exact = true;
    for (int i = 0; i < 50; ++i) {
        const std::size_t d = dims[i % 3];
        CMatrix a(d, d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) a(r, c) = complexd(idist(gen), idist(gen));
        const CVector phi = bell_state(d);
        if (vec(a, VecConvention::row()) != kron(a, CMatrix::identity(d)) * phi ||
            vec(a, VecConvention::col()) != kron(CMatrix::identity(d), a) * phi) {
            bell_forms_exact = false;
        }
    }

    bool swap_exact = true;
    for (const auto [dx, dy] :
         {std::pair<std::size_t, std::size_t>{2, 2}, {2, 3}, {3, 2}, {4, 4}}) {
        if (basis_change_op(VecConvention::col(), VecConvention::row(), dx, dy) !=
            swap_matrix(dx, dy)) {
            swap_exact = false;
        }
    }

    report(6, "vectorization identities",
           worst_roth <= 1e-12 && bell_forms_exact && swap_exact,
           "Roth deviation " + fmt(worst_roth) + ", Bell forms " +
               (bell_forms_exact ? "exact" : "NOT exact") + ", T_{c->r} = SWAP " +
               (swap_exact ? "exact" : "NOT exact"));
}

void criterion_7_appendix_identities() {
    std::mt19937_64 gen(700);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);

    double worst_snake = 0.0;
    double worst_trace = 0.0;
    for (std::size_t d = 2; d <= 8; ++d) {
        for (int rep = 0; rep < 10; ++rep) {
            CVector v(d);
            for (auto& e : v) e = complexd(dist(gen), dist(gen));
            const CVector phi = bell_state(d);
            // (<Phi+| (x) 1)(1 (x) |Phi+>) v
            CVector out(d, complexd(0.0));
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) {
                    for (std::size_t k = 0; k < d; ++k) {
                        out[k] += std::conj(phi[i * d + j]) * v[i] * phi[j * d + k];
                    }
                }
            }
            worst_snake = std::max(worst_snake, max_abs_diff(out, v) / vec_norm(v));

            CMatrix a(d, d);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) a(r, c) = complexd(dist(gen), dist(gen));
            const complexd t1 = inner(phi, kron(a, CMatrix::identity(d)) * phi);
            const complexd t2 = inner(phi, kron(CMatrix::identity(d), a) * phi);
            worst_trace = std::max({worst_trace, std::abs(t1 - trace(a)), std::abs(t2 - trace(a))});
        }
    }

    double worst_unitarity = 0.0;
    for (std::size_t n = 1; n <= 3; ++n) {
        const std::size_t d = std::size_t{1} << n;
        const VecConvention elem =
            VecConvention::in_basis(OperatorBasis::elementary(d, d));
        const VecConvention pauli = VecConvention::in_basis(OperatorBasis::pauli(n));
        for (const auto& [from, to] : {std::pair(elem, pauli), std::pair(pauli, elem)}) {
            const CMatrix t = basis_change_op(from, to, d, d);
            worst_unitarity = std::max(
                worst_unitarity,
                (adjoint(t) * t - CMatrix::identity(d * d)).frobenius_norm());
        }
    }

    report(7, "appendix identities",
           worst_snake <= 1e-12 && worst_trace <= 1e-12 && worst_unitarity <= 1e-10,
           "snake " + fmt(worst_snake) + ", graphical trace " + fmt(worst_trace) +
               ", T unitarity " + fmt(worst_unitarity));
}

void criterion_8_stinespring_bijectivity(const std::vector<StinespringRep>& channels) {
    double worst = 0.0;
    bool counts_match = true;
    for (const auto& se : channels) {
        const KrausRep k = sysenv_to_kraus(se);
        const KrausRep back = sysenv_to_kraus(kraus_to_stinespring(k));
        if (back.count() != k.count()) {
            counts_match = false;
            continue;
        }
        for (std::size_t a = 0; a < k.count(); ++a) {
            worst = std::max(worst, max_abs_diff(back.op(a), k.op(a)));
        }
    }
    report(8, "fixed-basis Stinespring bijectivity", counts_match && worst <= 1e-12,
           "max element deviation " + fmt(worst));
}

void criterion_9_chi_in_col_basis(const std::vector<StinespringRep>& channels) {
    double worst = 0.0;
    for (const auto& se : channels) {
        const ChoiMatrix choi = sysenv_to_choi(se);
        const ChiMatrix chi =
            choi_to_chi(choi, OperatorBasis::elementary(se.dx(), se.dy()));
        worst = std::max(worst, max_abs_diff(chi.mat(), choi.mat()));
    }
    report(9, "chi in the elementary col basis equals the Choi matrix", worst <= 1e-12,
           "max deviation " + fmt(worst));
}

// --- criterion 10: end-to-end through the CLI binary -------------------------

int run_quiet(const std::string& cmd) {
    const int st = std::system((cmd + " > /dev/null 2>&1").c_str());
    if (st == -1) return -1;
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_10_cli_end_to_end() {
    const char* cli = std::getenv("CHANNELFORGE_CLI");
    if (cli == nullptr) {
        report(10, "CLI end-to-end", false, "CHANNELFORGE_CLI not set");
        return;
    }
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "channelforge_acceptance";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);

    const char* targets[] = {"kraus", "superop", "choi", "chi", "stinespring"};
    int failures = 0;
    bool byte_stable = true;
    const std::size_t dims[] = {2, 3};
    for (int i = 0; i < 50; ++i) {
        const std::size_t d = dims[i % 2];
        const std::size_t rank = 1 + static_cast<std::size_t>(i / 2) % (d * d);
        const std::string base = (dir / ("ch" + std::to_string(i))).string();
        const std::string src = base + ".json";
        std::ostringstream gen;
        gen << cli << " random --type cptp --dim " << d << " --kraus-rank " << rank
            << " --seed " << (4000 + i) << " -o " << src;
        if (run_quiet(gen.str()) != 0) {
            ++failures;
            continue;
        }
        // Determinism: regenerating with the same seed is byte-identical.
        const std::string dup = base + "_dup.json";
        std::ostringstream gen2;
        gen2 << cli << " random --type cptp --dim " << d << " --kraus-rank " << rank
             << " --seed " << (4000 + i) << " -o " << dup;
        if (run_quiet(gen2.str()) != 0 || slurp(src) != slurp(dup)) byte_stable = false;

        for (const char* target : targets) {
            const std::string out = base + "_" + target + ".json";
            if (run_quiet(std::string(cli) + " convert -i " + src + " -t " + target + " -o " +
                          out) != 0 ||
                run_quiet(std::string(cli) + " check -i " + out) != 0) {
                ++failures;
            }
        }
        // Serialization round trip through the library is byte-stable.
        const std::string choi_file = base + "_choi.json";
        try {
            const ChannelFile loaded = read_channel_file(choi_file);
            const std::string rewritten = base + "_rewrite.json";
            write_channel_file(rewritten, loaded.channel, loaded.metadata);
            if (slurp(choi_file) != slurp(rewritten)) byte_stable = false;
        } catch (const Error&) {
            byte_stable = false;
        }
    }

    // Convert is path-independent: direct to Choi vs through the
    // superoperator, compared entrywise on the parsed matrices.
    double worst_path = 0.0;
    for (int i = 0; i < 50; i += 10) {
        const std::string base = (dir / ("ch" + std::to_string(i))).string();
        const std::string via = base + "_via_sop_choi.json";
        if (run_quiet(std::string(cli) + " convert -i " + base + "_superop.json -t choi -o " +
                      via) != 0) {
            ++failures;
            continue;
        }
        try {
            const auto direct = std::get<ChoiMatrix>(read_channel_file(base + "_choi.json").channel);
            const auto routed = std::get<ChoiMatrix>(read_channel_file(via).channel);
            worst_path = std::max(worst_path, max_abs_diff(direct.mat(), routed.mat()));
        } catch (const Error&) {
            ++failures;
        }
    }

    // Failure modes and the tolerance override.
    bool exit_codes_ok = true;
    {
        const std::string transpose = (dir / "transpose.json").string();
        write_channel_file(transpose,
                           Channel(SuperOp(swap_matrix(2, 2), VecConvention::col(), 2, 2)));
        // not-CP conversion and failed CP check report property failure (3).
        if (run_quiet(std::string(cli) + " convert -i " + transpose + " -t kraus -o " +
                      (dir / "never.json").string()) != 3) {
            exit_codes_ok = false;
        }
        if (run_quiet(std::string(cli) + " check -i " + transpose + " --cp") != 3) {
            exit_codes_ok = false;
        }
        // ...but hp and tp hold for the transpose map.
        if (run_quiet(std::string(cli) + " check -i " + transpose + " --hp --tp") != 0) {
            exit_codes_ok = false;
        }
        // A loose tolerance from the environment flips the CP verdict.
        if (run_quiet("CHANNELFORGE_TOL=10 " + std::string(cli) + " check -i " + transpose +
                      " --cp") != 0) {
            exit_codes_ok = false;
        }
        // Malformed input is a parse error (2).
        const std::string bogus = (dir / "bogus.json").string();
        std::ofstream(bogus) << "{\"not\": \"a channel\"}\n";
        if (run_quiet(std::string(cli) + " check -i " + bogus) != 2) exit_codes_ok = false;
    }

    std::filesystem::remove_all(dir);
    report(10, "CLI end-to-end",
           failures == 0 && byte_stable && worst_path <= 1e-9 && exit_codes_ok,
           std::to_string(50 - failures) + "/50 pipelines clean, byte stability " +
               (byte_stable ? "ok" : "BROKEN") + ", path independence " + fmt(worst_path) +
               ", exit codes " + (exit_codes_ok ? "ok" : "WRONG"));
}

}  // namespace

int main() {
    const Timer total;
    const std::vector<StinespringRep> channels = sample_channels(200);

    criterion_1_commuting_diagram(channels);
    criterion_2_evolution_equivalence(channels);
    criterion_3_round_trips(channels);
    criterion_4_canonical_kraus(channels);
    criterion_5_cp_discrimination(channels);
    criterion_6_vectorization_identities();
    criterion_7_appendix_identities();
    criterion_8_stinespring_bijectivity(channels);
    criterion_9_chi_in_col_basis(channels);
    criterion_10_cli_end_to_end();

    std::cout << (g_failures == 0 ? "all criteria passed" : "FAILURES: " + std::to_string(g_failures))
              << " (" << std::setprecision(2) << std::fixed << total.seconds() << " s)\n";
    return g_failures == 0 ? 0 : 1;
}
