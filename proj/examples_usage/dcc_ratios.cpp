// Prints the largest DCC ratio q = p / p~ per level on a graded mesh,
// then solves the manufactured ODE and reports the error at t = T.
#include <cstdio>

#include "caputo/caputo.hpp"

int main() {
    const auto mesh = caputo::graded_mesh(1.0, 64, 2.0);
    const auto rows = caputo::l1_rows(mesh, 0.5, mesh.size());
    for (std::size_t n : {1u, 8u, 32u, 64u}) {
        const auto chk = caputo::dcc_bound_check(caputo::dcc_row(mesh, rows, n));
        std::printf("n=%-3zu max q = %.4f  p <= p~: %s\n", n, chk.max_q, chk.holds ? "yes" : "no");
    }

    const auto traj = caputo::solve_ode({0.6, 0.3, 1.0, mesh});
    std::printf("ODE error at T: %.3e\n", traj.errors.back());
}
