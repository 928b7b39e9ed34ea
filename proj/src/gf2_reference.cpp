#include "adams/gf2_reference.hpp"

#include <stdexcept>

namespace adams::gf2::reference {

int rank(const Matrix& m, const std::vector<int>& row_order) {
    std::vector<int> order = row_order;
    if (order.empty()) {
        order.resize(m.rows());
        for (int i = 0; i < m.rows(); ++i)
            order[i] = i;
    }
    if (int(order.size()) != m.rows())
        throw std::invalid_argument("reference rank: bad row order");

    // basis_by_lead[c] holds a reduced-in row whose leading bit is c.
    std::vector<Vec> basis_by_lead(m.cols());
    std::vector<char> occupied(m.cols(), 0);
    int r = 0;
    for (int idx : order) {
        Vec v = m.row(idx);
        int lead = v.lowest_set();
        while (lead >= 0 && occupied[lead]) {
            v ^= basis_by_lead[lead];
            lead = v.lowest_set();
        }
        if (lead >= 0) {
            basis_by_lead[lead] = std::move(v);
            occupied[lead] = 1;
            ++r;
        }
    }
    return r;
}

Matrix kernel_spanning_set(const Matrix& m) {
    // Eliminate [M^T | I] rows: rows of the identity block whose M^T part
    // cancels completely record a combination of columns of M that sums to
    // zero, i.e. a kernel vector.
    int n = m.cols();
    Matrix mt = m.transpose();  // n x rows
    Matrix aug = mt.hstack(Matrix::identity(n));
    std::vector<Vec> basis_by_lead(m.rows());
    std::vector<char> occupied(m.rows(), 0);
    Matrix ker(0, n);
    for (int i = 0; i < n; ++i) {
        Vec v = aug.row(i);
        int lead = v.lowest_set();
        while (lead >= 0 && lead < m.rows() && occupied[lead]) {
            v ^= basis_by_lead[lead];
            lead = v.lowest_set();
        }
        if (lead >= 0 && lead < m.rows()) {
            basis_by_lead[lead] = std::move(v);
            occupied[lead] = 1;
        } else {
            // Entirely cancelled on the left: right half is a kernel vector.
            Vec k(n);
            for (int c = 0; c < n; ++c)
                if (v.get(m.rows() + c))
                    k.set(c, true);
            ker.append_row(std::move(k));
        }
    }
    return ker;
}

}  // namespace adams::gf2::reference
