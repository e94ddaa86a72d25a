// This file is part of brdf-sampler.
// The brdf-sampler source code is licensed under the Apache License, Version 2.0.
// SPDX: Apache-2.0

#include "brdfsampler/sample_csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace brdfsampler {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void write_sample_csv(std::ostream &os, const MeasurementSet &m) {
    os << "theta_i,phi_i,theta_r,phi_r,value\n";
    for (std::size_t k = 0; k < m.size(); ++k) {
        const auto &[wi, wr] = m.configuration().pair(k);
        os << format_double(wi.theta()) << ',' << format_double(wi.phi()) << ','
           << format_double(wr.theta()) << ',' << format_double(wr.phi()) << ','
           << format_double(m.values()[k]) << '\n';
    }
}

std::string sample_csv_string(const MeasurementSet &m) {
    std::ostringstream os;
    write_sample_csv(os, m);
    return os.str();
}

namespace {

double parse_field(const std::string &field, std::size_t line, const char *name) {
    double out = 0.0;
    const char *begin = field.data();
    const char *end = begin + field.size();
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc{} || res.ptr != end)
        throw CsvError(line, std::string("cannot parse ") + name + " \"" + field + "\"");
    if (!std::isfinite(out))
        throw CsvError(line, std::string(name) + " is not finite");
    return out;
}

}  // namespace

MeasurementSet read_sample_csv(std::istream &is) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(is, line)) throw CsvError(1, "empty file");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "theta_i,phi_i,theta_r,phi_r,value")
        throw CsvError(line_no, "expected header theta_i,phi_i,theta_r,phi_r,value");

    std::vector<std::pair<Direction, Direction>> pairs;
    std::vector<double> values;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 5)
            throw CsvError(line_no, "expected 5 fields, found " + std::to_string(fields.size()));

        const double ti = parse_field(fields[0], line_no, "theta_i");
        const double pi_i = parse_field(fields[1], line_no, "phi_i");
        const double tr = parse_field(fields[2], line_no, "theta_r");
        const double pr = parse_field(fields[3], line_no, "phi_r");
        const double value = parse_field(fields[4], line_no, "value");
        try {
            pairs.emplace_back(Direction(ti, pi_i), Direction(tr, pr));
        } catch (const std::invalid_argument &e) {
            throw CsvError(line_no, e.what());
        }
        values.push_back(value);
    }
    if (pairs.empty()) throw CsvError(line_no, "no sample rows");

    // Regroup values to the configuration's group-major pair order: rows land
    // in their first-appearance group, keeping file order within each group.
    MeasurementConfiguration config = MeasurementConfiguration::from_pairs(pairs);
    std::vector<std::size_t> group_of(pairs.size());
    {
        std::vector<Direction> seen;
        for (std::size_t row = 0; row < pairs.size(); ++row) {
            std::size_t idx = seen.size();
            for (std::size_t i = 0; i < seen.size(); ++i)
                if (seen[i] == pairs[row].first) {
                    idx = i;
                    break;
                }
            if (idx == seen.size()) seen.push_back(pairs[row].first);
            group_of[row] = idx;
        }
    }
    std::vector<std::size_t> offset(config.incoming_count() + 1, 0);
    for (std::size_t p = 0; p < config.incoming_count(); ++p)
        offset[p + 1] = offset[p] + config.reflection_count(p);
    std::vector<std::size_t> cursor(offset.begin(), offset.end() - 1);
    std::vector<double> ordered(values.size());
    for (std::size_t row = 0; row < pairs.size(); ++row)
        ordered[cursor[group_of[row]]++] = values[row];

    return MeasurementSet(std::move(config), std::move(ordered),
                          Provenance{"ingested", NoiseModel::none(), 0, ""});
}

MeasurementSet read_sample_csv_string(const std::string &content) {
    std::istringstream is(content);
    return read_sample_csv(is);
}

}  // namespace brdfsampler
