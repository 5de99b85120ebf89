// channelforge: convert, verify, apply, and generate CPTP channel files.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "channelforge/channel_file.hpp"
#include "channelforge/errors.hpp"
#include "channelforge/random.hpp"
#include "channelforge/transforms.hpp"

namespace cf = channelforge;

namespace {

constexpr const char* kToolVersion = "channelforge 1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitProperty = 3;
constexpr int kExitNumeric = 4;

cf::Json tool_metadata() {
    cf::Json m = cf::Json::object();
    m["tool"] = kToolVersion;
    return m;
}

// Conversion graph. Every target is reached through the col-convention
// superoperator/Choi core; spectral decomposition bridges to the Kraus and
// system-environment side.

cf::ChoiMatrix to_choi(const cf::Channel& ch, std::vector<std::string>& path) {
    using cf::RepKind;
    switch (cf::kind_of(ch)) {
        case RepKind::kraus:
            path.push_back("choi");
            return cf::kraus_to_choi(std::get<cf::KrausRep>(ch));
        case RepKind::superop:
            path.push_back("choi");
            return cf::superop_to_choi(std::get<cf::SuperOp>(ch));
        case RepKind::choi:
            return std::get<cf::ChoiMatrix>(ch).to_col();
        case RepKind::chi:
            path.push_back("choi");
            return cf::chi_to_choi(std::get<cf::ChiMatrix>(ch));
        case RepKind::stinespring:
            path.push_back("choi");
            return cf::sysenv_to_choi(std::get<cf::StinespringRep>(ch));
    }
    throw cf::DomainError("to_choi: bad representation");
}

cf::KrausRep to_kraus(const cf::Channel& ch, std::vector<std::string>& path, double tol) {
    using cf::RepKind;
    switch (cf::kind_of(ch)) {
        case RepKind::kraus:
            return std::get<cf::KrausRep>(ch);
        case RepKind::stinespring:
            path.push_back("kraus");
            return cf::sysenv_to_kraus(std::get<cf::StinespringRep>(ch));
        default: {
            const cf::ChoiMatrix lam = to_choi(ch, path);
            path.push_back("kraus");
            return cf::choi_to_kraus(lam, 1e-12, tol);
        }
    }
}

cf::Channel convert_channel(const cf::Channel& ch, cf::RepKind target,
                            const std::optional<cf::OperatorBasis>& chi_basis, double tol,
                            std::vector<std::string>& path) {
    using cf::RepKind;
    path.push_back(cf::to_string(cf::kind_of(ch)));
    switch (target) {
        case RepKind::superop: {
            if (cf::kind_of(ch) == RepKind::kraus) {
                path.push_back("superop");
                return cf::kraus_to_superop(std::get<cf::KrausRep>(ch));
            }
            if (cf::kind_of(ch) == RepKind::stinespring) {
                path.push_back("superop");
                return cf::sysenv_to_superop(std::get<cf::StinespringRep>(ch));
            }
            if (cf::kind_of(ch) == RepKind::superop) {
                return cf::superop_change_basis(std::get<cf::SuperOp>(ch),
                                                cf::VecConvention::col());
            }
            const cf::ChoiMatrix lam = to_choi(ch, path);
            path.push_back("superop");
            return cf::choi_to_superop(lam);
        }
        case RepKind::choi:
            return to_choi(ch, path);
        case RepKind::kraus:
            return to_kraus(ch, path, tol);
        case RepKind::stinespring: {
            if (cf::kind_of(ch) == RepKind::stinespring) {
                return ch;
            }
            const cf::KrausRep k = to_kraus(ch, path, tol);
            path.push_back("stinespring");
            return cf::kraus_to_stinespring(k);
        }
        case RepKind::chi: {
            const std::size_t dx = cf::channel_dx(ch);
            const std::size_t dy = cf::channel_dy(ch);
            cf::OperatorBasis basis = chi_basis ? *chi_basis : [&] {
                // Default: Pauli when the space is a qubit register, else
                // elementary in col ordering.
                if (dx == dy && (dx & (dx - 1)) == 0 && dx >= 2) {
                    std::size_t n = 0;
                    for (std::size_t d = dx; d > 1; d /= 2) ++n;
                    return cf::OperatorBasis::pauli(n);
                }
                return cf::OperatorBasis::elementary(dx, dy);
            }();
            if (cf::kind_of(ch) == RepKind::chi) {
                path.push_back("chi");
                return cf::chi_change_basis(std::get<cf::ChiMatrix>(ch), basis);
            }
            const cf::ChoiMatrix lam = to_choi(ch, path);
            path.push_back("chi");
            return cf::choi_to_chi(lam, basis);
        }
    }
    throw cf::DomainError("convert: bad target representation");
}

std::string join_path(const std::vector<std::string>& path) {
    std::string out;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) out += " -> ";
        out += path[i];
    }
    return out;
}

cf::OperatorBasis parse_basis_name(const std::string& name, std::size_t dx, std::size_t dy) {
    if (name == "pauli") {
        if (dx != dy || (dx & (dx - 1)) != 0 || dx < 2) {
            throw cf::DomainError("pauli basis requires dx = dy = 2^n");
        }
        std::size_t n = 0;
        for (std::size_t d = dx; d > 1; d /= 2) ++n;
        return cf::OperatorBasis::pauli(n);
    }
    if (name == "elementary" || name == "elementary-col") {
        return cf::OperatorBasis::elementary(dx, dy);
    }
    if (name == "elementary-row") {
        return cf::OperatorBasis::elementary(dx, dy, cf::ElementaryOrdering::row);
    }
    throw cf::DomainError("unknown basis '" + name + "' (try pauli, elementary, elementary-row)");
}

struct CheckOutcome {
    bool all_pass = true;
};

void run_check(const cf::Channel& ch, bool want_cp, bool want_tp, bool want_hp, double tol,
               CheckOutcome& outcome) {
    const auto report = [&](const char* name, bool pass, const std::string& witness) {
        std::cout << name << ": " << (pass ? "PASS" : "FAIL") << "  (" << witness << ")\n";
        if (!pass) outcome.all_pass = false;
    };
    std::visit(
        [&](const auto& rep) {
            using T = std::decay_t<decltype(rep)>;
            std::ostringstream w;
            w << std::setprecision(6) << std::scientific;
            if (want_hp) {
                w.str("");
                if constexpr (std::is_same_v<T, cf::KrausRep> ||
                              std::is_same_v<T, cf::StinespringRep>) {
                    w << "hermiticity-preserving by construction";
                    report("hp", cf::is_hp(rep, tol), w.str());
                } else {
                    w << "hermiticity defect " << cf::hp_defect(rep);
                    report("hp", cf::is_hp(rep, tol), w.str());
                }
            }
            if (want_tp) {
                w.str("");
                w << "||trace condition defect|| = " << cf::tp_defect(rep);
                report("tp", cf::is_tp(rep, tol), w.str());
            }
            if (want_cp) {
                w.str("");
                if constexpr (std::is_same_v<T, cf::KrausRep> ||
                              std::is_same_v<T, cf::StinespringRep>) {
                    w << "completely positive by construction";
                    report("cp", cf::is_cp(rep, tol), w.str());
                } else {
                    w << "min Choi eigenvalue " << cf::cp_min_eigenvalue(rep);
                    report("cp", cf::is_cp(rep, tol), w.str());
                }
            }
        },
        ch);
}

double resolve_tol(const std::optional<double>& cli_tol) {
    if (cli_tol) return *cli_tol;
    if (const char* env = std::getenv("CHANNELFORGE_TOL")) {
        try {
            return std::stod(env);
        } catch (...) {
            throw cf::DomainError("CHANNELFORGE_TOL is not a number");
        }
    }
    return cf::kDefaultTol;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Representations of completely positive maps: convert, check, apply, generate"};
    app.require_subcommand(1);
    app.fallthrough();  // lets --tol appear after the subcommand

    std::optional<double> tol_opt;
    app.add_option("--tol", tol_opt,
                   "Tolerance for verifiers (default 1e-10; env CHANNELFORGE_TOL)");

    // convert
    auto* cmd_convert = app.add_subcommand("convert", "Convert a channel file between representations");
    std::string conv_input, conv_output, conv_target;
    std::string conv_basis;
    cmd_convert->add_option("-i,--input", conv_input, "Input channel file")->required();
    cmd_convert->add_option("-o,--output", conv_output, "Output channel file")->required();
    cmd_convert
        ->add_option("-t,--to", conv_target,
                     "Target representation: kraus|superop|choi|chi|stinespring")
        ->required();
    cmd_convert->add_option("--basis", conv_basis,
                            "Operator basis for chi targets (pauli, elementary, elementary-row)");

    // check
    auto* cmd_check = app.add_subcommand("check", "Verify structural properties of a channel");
    std::string check_input;
    bool flag_cp = false, flag_tp = false, flag_hp = false;
    cmd_check->add_option("-i,--input", check_input, "Input channel file")->required();
    cmd_check->add_flag("--cp", flag_cp, "Check complete positivity");
    cmd_check->add_flag("--tp", flag_tp, "Check trace preservation");
    cmd_check->add_flag("--hp", flag_hp, "Check hermiticity preservation");

    // apply
    auto* cmd_apply = app.add_subcommand("apply", "Apply a channel to a state");
    std::string apply_channel, apply_state, apply_output;
    cmd_apply->add_option("-c,--channel", apply_channel, "Channel file")->required();
    cmd_apply->add_option("-s,--state", apply_state, "Input state file")->required();
    cmd_apply->add_option("-o,--output", apply_output, "Output state file")->required();

    // random
    auto* cmd_random = app.add_subcommand("random", "Generate a random channel or state");
    std::string rand_type = "cptp", rand_output;
    std::size_t rand_dim = 2, rand_rank = 0;
    std::optional<std::size_t> rand_dim_out;
    std::uint64_t rand_seed = 0;
    cmd_random->add_option("--type", rand_type, "unitary | cptp | state (default cptp)");
    cmd_random->add_option("--dim", rand_dim, "Input dimension dx")->required();
    cmd_random->add_option("--dim-out", rand_dim_out, "Output dimension dy (default dx)");
    cmd_random->add_option("--kraus-rank", rand_rank, "Environment dimension (default dx*dy)");
    cmd_random->add_option("--seed", rand_seed, "RNG seed")->required();
    cmd_random->add_option("-o,--output", rand_output, "Output file")->required();

    // basis
    auto* cmd_basis = app.add_subcommand("basis", "List or export built-in operator bases");
    auto* basis_list = cmd_basis->add_subcommand("list", "List built-in bases");
    auto* basis_export = cmd_basis->add_subcommand("export", "Write a basis as JSON");
    std::string basis_name, basis_output;
    std::size_t basis_dx = 2, basis_dy = 2;
    basis_export->add_option("--name", basis_name, "pauli | elementary | elementary-row")
        ->required();
    basis_export->add_option("--dx", basis_dx, "Input dimension");
    basis_export->add_option("--dy", basis_dy, "Output dimension");
    basis_export->add_option("-o,--output", basis_output, "Output file")->required();
    cmd_basis->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        const double tol = resolve_tol(tol_opt);

        if (*cmd_convert) {
            const cf::RepKind target = cf::rep_kind_from_string(conv_target);
            cf::ChannelFile in = cf::read_channel_file(conv_input);
            std::optional<cf::OperatorBasis> basis;
            if (!conv_basis.empty()) {
                basis = parse_basis_name(conv_basis, cf::channel_dx(in.channel),
                                         cf::channel_dy(in.channel));
            }
            std::vector<std::string> path;
            const cf::Channel out = convert_channel(in.channel, target, basis, tol, path);
            cf::Json metadata = tool_metadata();
            if (in.metadata.contains("rng")) metadata["rng"] = in.metadata["rng"];
            metadata["converted_via"] = join_path(path);
            cf::write_channel_file(conv_output, out, std::move(metadata));
            std::cout << "path: " << join_path(path) << "\n";
            std::cout << "wrote " << conv_output << "\n";
            return kExitOk;
        }

        if (*cmd_check) {
            if (!flag_cp && !flag_tp && !flag_hp) {
                flag_cp = flag_tp = flag_hp = true;
            }
            cf::ChannelFile in = cf::read_channel_file(check_input);
            CheckOutcome outcome;
            run_check(in.channel, flag_cp, flag_tp, flag_hp, tol, outcome);
            return outcome.all_pass ? kExitOk : kExitProperty;
        }

        if (*cmd_apply) {
            cf::ChannelFile ch = cf::read_channel_file(apply_channel);
            const cf::DensityMatrix rho = cf::read_state_file(apply_state, true, tol);
            const cf::DensityMatrix out = std::visit(
                [&](const auto& rep) {
                    using T = std::decay_t<decltype(rep)>;
                    if constexpr (std::is_same_v<T, cf::KrausRep>) return cf::apply_kraus(rep, rho);
                    else if constexpr (std::is_same_v<T, cf::SuperOp>) return cf::apply_superop(rep, rho);
                    else if constexpr (std::is_same_v<T, cf::ChoiMatrix>) return cf::apply_choi(rep, rho);
                    else if constexpr (std::is_same_v<T, cf::ChiMatrix>) return cf::apply_chi(rep, rho);
                    else return cf::apply_sysenv(rep, rho);
                },
                ch.channel);
            cf::write_state_file(apply_output, out, tool_metadata());
            const cf::complexd tr = cf::trace(out.mat());
            std::cout << std::setprecision(12) << "output trace: " << tr.real();
            if (std::abs(tr.imag()) > 1e-12) std::cout << " + " << tr.imag() << "i";
            std::cout << "\n";
            std::cout << "wrote " << apply_output << "\n";
            return kExitOk;
        }

        if (*cmd_random) {
            cf::Rng rng(rand_seed);
            cf::Json metadata = tool_metadata();
            metadata["rng"] = {{"name", cf::Rng::kName}, {"seed", rand_seed}};
            if (rand_type == "state") {
                cf::write_state_file(rand_output, cf::random_state(rand_dim, rng),
                                     std::move(metadata));
            } else if (rand_type == "unitary") {
                const cf::CMatrix u = cf::random_unitary(rand_dim, rng);
                cf::write_channel_file(rand_output, cf::Channel(cf::KrausRep({u})),
                                       std::move(metadata));
            } else if (rand_type == "cptp") {
                const std::size_t dy = rand_dim_out.value_or(rand_dim);
                const std::size_t rank = rand_rank == 0 ? rand_dim * dy : rand_rank;
                cf::write_channel_file(
                    rand_output,
                    cf::Channel(cf::random_cptp(rand_dim, dy, rank, rng)),
                    std::move(metadata));
            } else {
                throw cf::DomainError("unknown --type '" + rand_type + "'");
            }
            std::cout << "wrote " << rand_output << "\n";
            return kExitOk;
        }

        if (*cmd_basis) {
            if (*basis_list) {
                std::cout << "pauli           n-qubit Pauli products over sqrt(d) (dx = dy = 2^n)\n"
                          << "elementary      |i><j| in column ordering (alpha = i + dy*j)\n"
                          << "elementary-row  |i><j| in row ordering (alpha = dx*i + j)\n";
                return kExitOk;
            }
            const cf::OperatorBasis basis = parse_basis_name(basis_name, basis_dx, basis_dy);
            cf::Json out = cf::Json::object();
            out["format"] = "channelforge/basis-v1";
            out["basis"] = cf::basis_to_json(basis);
            cf::Json elems = cf::Json::array();
            for (const auto& e : basis.elements()) elems.push_back(cf::matrix_to_json(e));
            out["elements"] = std::move(elems);
            out["metadata"] = tool_metadata();
            std::ofstream f(basis_output);
            if (!f) throw cf::Error("cannot write '" + basis_output + "'");
            f << out.dump(2) << "\n";
            std::cout << "wrote " << basis_output << "\n";
            return kExitOk;
        }
    } catch (const cf::NotCPError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitProperty;
    } catch (const cf::NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const cf::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const cf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitOk;
}
