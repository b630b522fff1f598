#ifndef ABSLOG_LITERAL_HPP
#define ABSLOG_LITERAL_HPP

#include <optional>
#include <string>

#include "abslog/domain.hpp"

namespace abslog {

// Value literal syntax, per carrier shape:
//   intervals    "[-1,1]", "[0,+inf)", "(-inf,+inf)", "empty"
//   state sets   "{0,999}" (one variable), "{(x=0,y=1),(x=2,y=0)}", "{}"
//   hypersets    "{{0},{2}}", "{[0,5],[1,1]}", "{}"
//   down-sets    "down{ [0,0]; prog(2k+0) }", "down{}", "down{empty}"
//   pairs        "<{1,999} | [1,999]>"
//   point        "top"
Value parse_literal(const std::string& text, const CarrierShape& shape,
                    const std::optional<FinStateSpace>& space);

inline Value parse_literal(const std::string& text, const DomainDescriptor& dom) {
    return parse_literal(text, dom.shape, dom.space);
}

std::string print_literal(const Value& v, const CarrierShape& shape,
                          const std::optional<FinStateSpace>& space);

inline std::string print_literal(const Value& v, const DomainDescriptor& dom) {
    return print_literal(v, dom.shape, dom.space);
}

} // namespace abslog

#endif // ABSLOG_LITERAL_HPP
