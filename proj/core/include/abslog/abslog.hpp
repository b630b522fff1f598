#ifndef ABSLOG_ABSLOG_HPP
#define ABSLOG_ABSLOG_HPP

#include "abslog/domain.hpp"
#include "abslog/errors.hpp"
#include "abslog/eval.hpp"
#include "abslog/galois.hpp"
#include "abslog/lattice.hpp"
#include "abslog/laws.hpp"
#include "abslog/literal.hpp"
#include "abslog/logic.hpp"
#include "abslog/monoid.hpp"
#include "abslog/regcmd.hpp"
#include "abslog/script.hpp"
#include "abslog/value.hpp"

#endif // ABSLOG_ABSLOG_HPP
