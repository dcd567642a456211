#include "heatsym/solution_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "heatsym/errors.hpp"

namespace heatsym {

namespace {

bool has_mass(const std::vector<Layer>& layers) {
    return !layers.empty() && layers.front().s.has_value();
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
        out.push_back(cell);
    }
    return out;
}

double number(const std::string& cell, std::size_t line) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(cell, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != cell.size())
        fail(ErrorCode::ParseError, "bad number '" + cell + "' on line " + std::to_string(line));
    return v;
}

}  // namespace

void write_solution_csv(std::ostream& out, const std::vector<Layer>& layers) {
    const bool mass = has_mass(layers);
    out << (mass ? "t,i,x,s,rho,u\n" : "t,i,x,u\n");
    out << std::setprecision(17);
    for (const Layer& l : layers) {
        if (l.s.has_value() != mass) fail(ErrorCode::LayerMismatch, "layers mix mass and physical grids");
        for (std::size_t i = 0; i < l.size(); ++i) {
            out << l.t << ',' << i << ',' << l.x[i];
            // an empty rho field means the layer carries no density
            if (mass) {
                out << ',' << (*l.s)[i] << ',';
                if (l.rho) out << (*l.rho)[i];
            }
            out << ',' << l.u[i] << '\n';
        }
    }
}

std::vector<Layer> read_solution_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) fail(ErrorCode::ParseError, "empty solution file");
    const auto header = split(line);
    const bool mass = header == std::vector<std::string>{"t", "i", "x", "s", "rho", "u"};
    if (!mass && header != std::vector<std::string>{"t", "i", "x", "u"})
        fail(ErrorCode::ParseError, "solution header must be t,i,x,u or t,i,x,s,rho,u");

    std::vector<Layer> layers;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto cells = split(line);
        if (cells.size() != header.size())
            fail(ErrorCode::ParseError, "wrong column count on line " + std::to_string(lineno));
        const double t = number(cells[0], lineno);
        const double i = number(cells[1], lineno);
        if (i == 0.0) {
            layers.emplace_back();
            layers.back().t = t;
            if (mass) {
                layers.back().s.emplace();
                if (!cells[4].empty()) layers.back().rho.emplace();
            }
        }
        if (layers.empty() || i != static_cast<double>(layers.back().size()) || t != layers.back().t)
            fail(ErrorCode::ParseError, "node rows out of order on line " + std::to_string(lineno));
        Layer& l = layers.back();
        l.x.push_back(number(cells[2], lineno));
        if (mass) {
            l.s->push_back(number(cells[3], lineno));
            if (l.rho.has_value() == cells[4].empty())
                fail(ErrorCode::ParseError, "rho present on only part of a layer, line " + std::to_string(lineno));
            if (l.rho) l.rho->push_back(number(cells[4], lineno));
        }
        l.u.push_back(number(cells.back(), lineno));
    }
    return layers;
}

void write_solution_csv(const std::string& path, const std::vector<Layer>& layers) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::ParseError, "cannot open " + path + " for writing");
    write_solution_csv(out, layers);
}

std::vector<Layer> read_solution_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::ParseError, "cannot open " + path);
    return read_solution_csv(in);
}

void write_time_mesh_csv(std::ostream& out, const TimeMesh& mesh) {
    out << "n,t\n" << std::setprecision(17);
    for (std::size_t n = 0; n < mesh.times.size(); ++n) out << n << ',' << mesh.times[n] << '\n';
}

void write_layer_mesh_csv(std::ostream& out, const Layer& layer) {
    write_solution_csv(out, std::vector<Layer>{layer});
}

}  // namespace heatsym
