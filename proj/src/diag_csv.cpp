#include "peq/diag_csv.hpp"

#include <cstdio>

#include "peq/errors.hpp"

namespace peq {

std::string format_g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string diag_csv_header() {
    return "time,L2_v,L6_v,Linf_T,L2_T,L2_grad_v,L2_gradH_T,L2_gradH_vbar,L2_laplH_vbar,"
           "L6_dz_v,L2_grad_u,L2_lapl2_u,L2_laplH_v,L2_lapl_T,energy_residual,"
           "symmetry_residual,u_eq_residual";
}

std::string diag_csv_row(const DiagRecord& r) {
    const double cols[17] = {r.time,          r.L2_v,         r.L6_v,
                             r.Linf_T,        r.L2_T,         r.L2_grad_v,
                             r.L2_gradH_T,    r.L2_gradH_vbar, r.L2_laplH_vbar,
                             r.L6_dz_v,       r.L2_grad_u,    r.L2_lapl2_u,
                             r.L2_laplH_v,    r.L2_lapl_T,    r.energy_residual,
                             r.symmetry_residual, r.u_eq_residual};
    std::string row;
    for (int i = 0; i < 17; ++i) {
        if (i) row += ',';
        row += format_g17(cols[i]);
    }
    return row;
}

DiagCsv::DiagCsv(const std::string& path) : out_(path, std::ios::trunc) {
    if (!out_) throw IoError("diag csv: cannot open '" + path + "' for writing");
    out_ << diag_csv_header() << '\n';
    out_.flush();
}

void DiagCsv::write(const DiagRecord& r) {
    out_ << diag_csv_row(r) << '\n';
    out_.flush();
    if (!out_) throw IoError("diag csv: write failed");
}

}  // namespace peq
