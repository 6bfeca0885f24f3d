#pragma once

#include <admlab/signals/integrals.hpp>
#include <admlab/signals/signal.hpp>

#include <iomanip>
#include <limits>
#include <ostream>

namespace admlab::signals {

/// Rows (channel, s_k, re, im) for every piece start, plus a closing row at the horizon.
template <class Real>
void write_csv(std::ostream& os, const basic_piecewise_signal<Real>& u) {
    os << "channel,s,re,im\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (std::size_t c = 0; c < u.channel_count(); ++c) {
        const auto& ch = u.channel(c);
        for (std::size_t k = 0; k < ch.values().size(); ++k) {
            os << c << ',' << static_cast<double>(ch.breakpoints()[k]) << ',' << static_cast<double>(ch.values()[k].real())
               << ',' << static_cast<double>(ch.values()[k].imag()) << '\n';
        }
        os << c << ',' << static_cast<double>(ch.horizon()) << ",0,0\n";
    }
}

/// The (m, interval) table of a counterexample input.
template <class Real>
void write_support_table(std::ostream& os, const std::vector<support_interval<Real>>& table) {
    os << "m,lo,hi\n" << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& r : table) os << r.m << ',' << static_cast<double>(r.lo) << ',' << static_cast<double>(r.hi) << '\n';
}

}  // namespace admlab::signals
