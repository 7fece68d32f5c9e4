#include "sweep1d/config.hpp"

#include <fstream>
#include <sstream>

#include "sweep1d/errors.hpp"
#include "sweep1d/partition.hpp"

namespace sweep1d {

std::string to_string(Equation eq) { return eq == Equation::Heat ? "heat" : "euler"; }
std::string to_string(Method m) { return m == Method::Lengthening ? "lengthening" : "flattening"; }
std::string to_string(Scheme s) { return s == Scheme::Classic ? "classic" : "swept"; }
std::string to_string(Mode m) { return m == Mode::WallClock ? "wall" : "virtual"; }

Equation equation_from_string(const std::string& s) {
    if (s == "heat") return Equation::Heat;
    if (s == "euler") return Equation::Euler;
    throw InvalidConfig("unknown equation '" + s + "' (expected heat|euler)");
}

Method method_from_string(const std::string& s) {
    if (s == "lengthening") return Method::Lengthening;
    if (s == "flattening") return Method::Flattening;
    throw InvalidConfig("unknown method '" + s + "' (expected lengthening|flattening)");
}

Scheme scheme_from_string(const std::string& s) {
    if (s == "classic") return Scheme::Classic;
    if (s == "swept") return Scheme::Swept;
    throw InvalidConfig("unknown scheme '" + s + "' (expected classic|swept)");
}

Mode mode_from_string(const std::string& s) {
    if (s == "wall") return Mode::WallClock;
    if (s == "virtual") return Mode::VirtualTime;
    throw InvalidConfig("unknown mode '" + s + "' (expected wall|virtual)");
}

std::string LaunchConfig::initial_or_default() const {
    if (!initial.empty()) return initial;
    return equation == Equation::Heat ? "heat-sine" : "euler-sod-periodic";
}

void LaunchConfig::validate(bool partitioned) const {
    const EquationSpec s = spec();
    const std::size_t h = static_cast<std::size_t>(s.stencil_half_width);
    if (grid_size < 2 * h + 1) {
        throw InvalidConfig("grid size " + std::to_string(grid_size) + " is too small for the stencil");
    }
    if (steps < 0) {
        throw InvalidConfig("step count must be >= 0, got " + std::to_string(steps));
    }
    if (!(phys.fourier > 0.0) || phys.fourier > 0.5) {
        throw InvalidConfig("Fourier number must lie in (0, 0.5], got " + std::to_string(phys.fourier));
    }
    if (!(phys.gamma > 1.0)) {
        throw InvalidConfig("gamma must exceed 1, got " + std::to_string(phys.gamma));
    }
    if (transport.alpha < 0.0 || transport.beta < 0.0 || transport.compute_cost < 0.0) {
        throw InvalidConfig("transport cost parameters must be non-negative");
    }
    if (!partitioned) {
        return;
    }

    const std::size_t w = block_width;
    if (w < 4 || (w & 1)) {
        throw InvalidConfig("block width must be even and >= 4, got " + std::to_string(w));
    }
    if (w < 4 * h) {
        throw InvalidConfig("block width " + std::to_string(w) + " must be >= 4*h = " +
                            std::to_string(4 * h) + " for stencil half-width " + std::to_string(h));
    }
    if (w % (2 * h) != 0) {
        throw InvalidConfig("block width " + std::to_string(w) + " must be a multiple of 2*h = " +
                            std::to_string(2 * h));
    }
    if (ranks < 2) {
        throw InvalidConfig("rank count must be >= 2, got " + std::to_string(ranks));
    }
    if (work_factor < 0) {
        throw InvalidConfig("work factor must be >= 0, got " + std::to_string(work_factor));
    }
    if (grid_size % w != 0) {
        throw InvalidConfig("grid size " + std::to_string(grid_size) +
                            " is not divisible by block width " + std::to_string(w));
    }
    const std::size_t total_blocks = grid_size / w;
    const std::size_t sh = static_cast<std::size_t>(shares());
    if (total_blocks % sh != 0) {
        throw InvalidConfig("total blocks " + std::to_string(total_blocks) +
                            " not divisible by shares (R-1+WF or R) = " + std::to_string(sh));
    }
}

void LaunchConfig::finalize(bool partitioned) {
    validate(partitioned);
    if (equation == Equation::Euler && phys.dt_dx == 0.0) {
        const auto ic = initial_condition(initial_or_default(), grid_size, spec(), phys.gamma);
        phys.dt_dx = phys.cfl / max_signal_speed(ic, phys.gamma);
    }
}

void apply_config_entry(LaunchConfig& cfg, const std::string& key, const std::string& value) {
    auto to_u = [&](const std::string& v) { return static_cast<std::size_t>(std::stoull(v)); };
    if (key == "equation") cfg.equation = equation_from_string(value);
    else if (key == "method") cfg.method = method_from_string(value);
    else if (key == "scheme") cfg.scheme = scheme_from_string(value);
    else if (key == "n" || key == "grid_size") cfg.grid_size = to_u(value);
    else if (key == "w" || key == "block_width") cfg.block_width = to_u(value);
    else if (key == "ranks") cfg.ranks = std::stoi(value);
    else if (key == "wf" || key == "work_factor") cfg.work_factor = std::stoi(value);
    else if (key == "steps") cfg.steps = std::stol(value);
    else if (key == "initial") cfg.initial = value;
    else if (key == "mode") cfg.mode = mode_from_string(value);
    else if (key == "fourier") cfg.phys.fourier = std::stod(value);
    else if (key == "gamma") cfg.phys.gamma = std::stod(value);
    else if (key == "cfl") cfg.phys.cfl = std::stod(value);
    else if (key == "alpha") cfg.transport.alpha = std::stod(value);
    else if (key == "beta") cfg.transport.beta = std::stod(value);
    else if (key == "compute_cost") cfg.transport.compute_cost = std::stod(value);
    else throw InvalidConfig("unknown config key '" + key + "'");
}

void apply_config_file(LaunchConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InvalidConfig("cannot open config file '" + path + "'");
    }
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string trimmed;
        for (char ch : line) {
            if (!std::isspace(static_cast<unsigned char>(ch))) trimmed.push_back(ch);
        }
        if (trimmed.empty()) continue;
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos) {
            throw InvalidConfig(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        apply_config_entry(cfg, trimmed.substr(0, eq), trimmed.substr(eq + 1));
    }
}

} // namespace sweep1d
