#include "binexp/trace.hpp"

#include "binexp/errors.hpp"

#include <array>
#include <charconv>
#include <string>
#include <utility>

namespace binexp {

namespace {

using K = FieldKind;

constexpr std::array<FieldSpec, 5> kMulSchema{{
    {"power", K::integer},
    {"value", K::integer},
    {"marked", K::flag},
    {"remaining", K::integer},
    {"accumulated", K::integer},
}};

constexpr std::array<FieldSpec, 6> kDivSchema{{
    {"exponent", K::integer},
    {"multiple", K::integer},
    {"digit", K::flag},
    {"residue_before", K::integer},
    {"residue", K::integer},
    {"quotient", K::integer},
}};

constexpr std::array<FieldSpec, 2> kHeronSchema{{
    {"x", K::real},
    {"step_size", K::real},
}};

constexpr std::array<FieldSpec, 5> kPowRationalSchema{{
    {"action", K::integer},
    {"base", K::real},
    {"p", K::integer},
    {"q", K::integer},
    {"z", K::real},
}};

constexpr std::array<FieldSpec, 4> kPowRealSchema{{
    {"action", K::integer},
    {"base", K::real},
    {"exponent", K::real},
    {"z", K::real},
}};

constexpr std::array<FieldSpec, 6> kLogSchema{{
    {"k", K::integer},
    {"root", K::real},
    {"frac", K::real},
    {"digit", K::flag},
    {"z", K::real},
    {"x", K::real},
}};

constexpr std::array<FieldSpec, 2> kBriggsSchema{{
    {"index", K::integer},
    {"value", K::real},
}};

constexpr std::array<std::pair<Algorithm, std::string_view>, 7> kNames{{
    {Algorithm::egyptian_mul, "egyptian_mul"},
    {Algorithm::div_qr, "div_qr"},
    {Algorithm::heron, "heron"},
    {Algorithm::pow_rational, "pow_rational"},
    {Algorithm::pow_real, "pow_real"},
    {Algorithm::log_base, "log_base"},
    {Algorithm::briggs, "briggs"},
}};

} // namespace

std::string_view algorithm_name(Algorithm algorithm) noexcept {
    for (const auto& [a, name] : kNames) {
        if (a == algorithm) {
            return name;
        }
    }
    return "unknown";
}

Algorithm algorithm_from_name(std::string_view name) {
    for (const auto& [a, n] : kNames) {
        if (n == name) {
            return a;
        }
    }
    throw SchemaError("unknown algorithm '" + std::string(name) + "'");
}

FieldKind kind_of(const FieldValue& value) noexcept {
    switch (value.index()) {
    case 0:
        return FieldKind::flag;
    case 1:
        return FieldKind::integer;
    default:
        return FieldKind::real;
    }
}

std::span<const FieldSpec> event_schema(Algorithm algorithm) noexcept {
    switch (algorithm) {
    case Algorithm::egyptian_mul:
        return kMulSchema;
    case Algorithm::div_qr:
        return kDivSchema;
    case Algorithm::heron:
        return kHeronSchema;
    case Algorithm::pow_rational:
        return kPowRationalSchema;
    case Algorithm::pow_real:
        return kPowRealSchema;
    case Algorithm::log_base:
        return kLogSchema;
    case Algorithm::briggs:
        return kBriggsSchema;
    }
    return {};
}

void TraceLog::reset(Algorithm algorithm) {
    algorithm_ = algorithm;
    inputs_.clear();
    config_.clear();
    events_.clear();
    result_.clear();
}

void TraceLog::add_input(std::string name, FieldValue value) {
    inputs_.push_back({std::move(name), value});
}

void TraceLog::add_config(std::string name, FieldValue value) {
    config_.push_back({std::move(name), value});
}

void TraceLog::add_result(std::string name, FieldValue value) {
    result_.push_back({std::move(name), value});
}

void TraceLog::record(std::vector<FieldValue> values) {
    const auto schema = event_schema(algorithm_);
    if (values.size() != schema.size()) {
        throw SchemaError(std::string(algorithm_name(algorithm_)) + " event expects " +
                          std::to_string(schema.size()) + " fields, got " +
                          std::to_string(values.size()));
    }
    for (std::size_t i = 0; i < schema.size(); ++i) {
        if (kind_of(values[i]) != schema[i].kind) {
            throw SchemaError("field '" + std::string(schema[i].name) + "' has the wrong kind");
        }
    }
    events_.push_back({events_.size() + 1, std::move(values)});
}

std::size_t TraceLog::field_index(std::string_view name) const {
    const auto schema = event_schema(algorithm_);
    for (std::size_t i = 0; i < schema.size(); ++i) {
        if (schema[i].name == name) {
            return i;
        }
    }
    throw SchemaError("no field '" + std::string(name) + "' in " +
                      std::string(algorithm_name(algorithm_)) + " events");
}

void TraceLog::throw_kind_mismatch(std::string_view name) {
    throw SchemaError("field '" + std::string(name) + "' has another kind");
}

void TraceLog::throw_missing(std::string_view name) {
    throw SchemaError("no value named '" + std::string(name) + "'");
}

std::string format_real(double value) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

} // namespace binexp
