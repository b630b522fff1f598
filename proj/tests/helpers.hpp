#ifndef ABSLOG_TESTS_HELPERS_HPP
#define ABSLOG_TESTS_HELPERS_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "abslog/abslog.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline std::string script_path(const std::string& name) {
    return std::string(ABSLOG_SCRIPTS_DIR) + "/" + name;
}

inline abslog::Script load_script(const std::string& name) {
    return abslog::parse_script(read_file(script_path(name)));
}

// Parse a one-variable program over {x} and assign node ids.
inline abslog::RegCmdPtr cmd(const std::string& text) {
    auto r = abslog::parse_cmd(text, {"x"});
    abslog::assign_ids(*r);
    return r;
}

inline abslog::Value lit(const std::string& text, const abslog::DomainDescriptor& dom) {
    return abslog::parse_literal(text, dom);
}

// Evaluate with default settings and return (value, exactness).
inline std::pair<abslog::Value, abslog::Exactness>
eval(const abslog::DomainPtr& dom, const std::string& program, const std::string& pre) {
    abslog::EvalContext ctx(dom);
    auto r = cmd(program);
    return abslog::sem_eval(*r, lit(pre, *dom), ctx);
}

} // namespace testutil

#endif
