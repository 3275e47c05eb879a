#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace binexp {

enum class Algorithm {
    egyptian_mul,
    div_qr,
    heron,
    pow_rational,
    pow_real,
    log_base,
    briggs,
};

std::string_view algorithm_name(Algorithm algorithm) noexcept;
/// Throws SchemaError for an unknown name.
Algorithm algorithm_from_name(std::string_view name);

using FieldValue = std::variant<bool, std::uint64_t, double>;

enum class FieldKind { flag, integer, real };

FieldKind kind_of(const FieldValue& value) noexcept;

struct FieldSpec {
    std::string_view name;
    FieldKind kind;
};

/// Fixed payload layout of the events recorded for `algorithm`.
std::span<const FieldSpec> event_schema(Algorithm algorithm) noexcept;

struct NamedValue {
    std::string name;
    FieldValue value;

    bool operator==(const NamedValue&) const = default;
};

/// Step kinds recorded in the `action` field of pow_rational / pow_real
/// events.
enum class PowAction : std::uint64_t {
    square_halve_p = 1,  ///< p even: p <- p/2, a <- a*a
    square_double_q = 2, ///< p odd:  q <- 2q,  a <- a*a
    square_halve_t = 3,  ///< t <- t/2, a <- a*a
    take_root = 4,       ///< p <- 2p (or t <- 2t), a <- sqrt(a)
    accumulate = 5,      ///< p <- p-q (or t <- t-1), z <- z*a
    done_near_one = 6,   ///< a within pow_eps of 1; result is z
    done_exact = 7,      ///< p == q; result is z*a
};

struct TraceEvent {
    std::size_t step = 0;
    /// In event_schema() order.
    std::vector<FieldValue> values;

    bool operator==(const TraceEvent&) const = default;
};

/// Ordered per-step record of one algorithm run.
///
/// An operation given a TraceLog resets it, fills the header, appends one
/// event per loop step and finally stores its result. Events are validated
/// against event_schema() as they are appended.
class TraceLog {
public:
    TraceLog() = default;
    explicit TraceLog(Algorithm algorithm) : algorithm_(algorithm) {}

    void reset(Algorithm algorithm);

    Algorithm algorithm() const noexcept { return algorithm_; }

    void add_input(std::string name, FieldValue value);
    void add_config(std::string name, FieldValue value);
    void add_result(std::string name, FieldValue value);

    /// Appends an event; throws SchemaError if the values do not match the
    /// schema of algorithm().
    void record(std::vector<FieldValue> values);

    const std::vector<NamedValue>& inputs() const noexcept { return inputs_; }
    const std::vector<NamedValue>& config() const noexcept { return config_; }
    const std::vector<TraceEvent>& events() const noexcept { return events_; }
    const std::vector<NamedValue>& result() const noexcept { return result_; }

    /// Value of `field` in `event`; throws SchemaError when the field is not
    /// part of the schema or holds another kind.
    template <typename T>
    T field(const TraceEvent& event, std::string_view name) const {
        const FieldValue& v = event.values.at(field_index(name));
        if (const T* p = std::get_if<T>(&v)) {
            return *p;
        }
        throw_kind_mismatch(name);
    }

    template <typename T>
    T input(std::string_view name) const {
        return lookup<T>(inputs_, name);
    }

    template <typename T>
    T result_value(std::string_view name) const {
        return lookup<T>(result_, name);
    }

    bool operator==(const TraceLog&) const = default;

private:
    std::size_t field_index(std::string_view name) const;
    [[noreturn]] static void throw_kind_mismatch(std::string_view name);
    [[noreturn]] static void throw_missing(std::string_view name);

    template <typename T>
    static T lookup(const std::vector<NamedValue>& values, std::string_view name) {
        for (const auto& nv : values) {
            if (nv.name == name) {
                if (const T* p = std::get_if<T>(&nv.value)) {
                    return *p;
                }
                throw_kind_mismatch(name);
            }
        }
        throw_missing(name);
    }

    Algorithm algorithm_ = Algorithm::egyptian_mul;
    std::vector<NamedValue> inputs_;
    std::vector<NamedValue> config_;
    std::vector<TraceEvent> events_;
    std::vector<NamedValue> result_;
};

// Text renderings. Each throws SchemaError when handed a log of another
// algorithm.

/// Two-column doubling table with `\` on the rows that enter the total.
std::string render_rhind(const TraceLog& log);
/// One line per halving step of the quotient/remainder loop.
std::string render_division(const TraceLog& log);
std::string render_heron(const TraceLog& log);
std::string render_pow(const TraceLog& log);
std::string render_log_digits(const TraceLog& log);
std::string render_briggs(const TraceLog& log);

/// Picks the renderer matching log.algorithm().
std::string render_text(const TraceLog& log);

/// JSON document, `schema: 1`. Field order is stable and reals are written
/// with the shortest decimal that reads back to the same binary64 value.
std::string to_json(const TraceLog& log);
/// Inverse of to_json; throws SchemaError on malformed documents.
TraceLog trace_from_json(std::string_view json);

/// Shortest round-trip decimal for `value`.
std::string format_real(double value);

} // namespace binexp
