// Reduces a small binary code over two 4-chains and prints the form, the
// witness and both weight distributions.

#include <iostream>

#include "nrt/nrt.hpp"

int main() {
    using namespace nrt;
    const Field gf2 = field_create(2);
    const CodeSpace space(gf2, 4, 2);
    const Matrix g(gf2, {{1, 1, 1, 0, 1, 1, 1, 1},
                         {1, 0, 1, 0, 0, 1, 1, 0},
                         {1, 1, 1, 0, 0, 1, 1, 1},
                         {0, 0, 0, 0, 1, 1, 0, 0}});

    const auto form = nrt_triangular_form(g, space);
    std::cout << "input:\n" << format_matrix_file(g, space) << "reduced:\n" << format_matrix_file(form.reduced, space);
    std::cout << "witness: " << witness_to_json(form.witness).dump() << '\n';
    std::cout << "NRT-triangular: " << (is_nrt_triangular(form.reduced, space) ? "yes" : "no")
              << ", witness " << (verify_witness(g, form.reduced, form.witness) ? "verified" : "REJECTED") << '\n';

    const auto before = weight_distribution(g, space), after = weight_distribution(form.reduced, space);
    std::cout << "weight  before  after\n";
    for (const auto& [w, c] : before.counts) std::cout << w << "  " << c << "  " << after.counts.at(w) << '\n';
}
