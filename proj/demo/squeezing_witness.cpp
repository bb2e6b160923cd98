// Hierarchies and amplitude-squared witnesses for a few states.
#include <cstdio>

#include "ncl/ncl.hpp"

int main()
{
    using namespace ncl;
    const int dim = 80;

    struct Named
    {
        const char* name;
        MomentTable table;
    };
    const auto [ass, params] = make_ass_state(2, 1.5, dim);
    const Named states[] = {
        {"coherent 0.5", moment_table(make_coherent(0.5, dim), 8)},
        {"thermal 1.0", moment_table(make_thermal(1.0, dim), 8)},
        {"squeezed r=0.5", moment_table(apply_squeeze(make_fock(0, dim), 0.5), 8)},
        {"Fock |1>", moment_table(make_fock(1, dim), 8)},
        {"ASS m=2 l=1.5", moment_table(ass, 8)},
    };

    std::printf("%-16s %12s %12s %12s %12s\n", "state", "d~2 (quad)", "d3 (aa)", "s3", "asq_min");
    for (const auto& s : states) {
        const auto quad = determinant_hierarchy(s.table, BasisKind::QUAD, 2);
        const auto aa = determinant_hierarchy(s.table, BasisKind::AA, 3);
        std::printf("%-16s %12.6f %12.6f %12.6f %12.6f\n", s.name, quad.determinants.back().value,
                    aa.determinants.back().value, s3(s.table), asq_min_max(s.table).min);
    }

    // sub-Poissonian statistics show up in the {1, a^dag a} minor
    const auto fock_matrix = build_matrix(states[3].table, BasisKind::AA, 6);
    std::printf("Fock |1> minor on {1, a^dag a}: %.3f\n", principal_minor(fock_matrix, {0, 4}));
    return 0;
}
