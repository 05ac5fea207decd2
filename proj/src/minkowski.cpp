#include "radreact/minkowski.hpp"

namespace radreact {

FourVector mat_vec(const Mat4& m, const FourVector& v)
{
    const auto c = v.components();
    std::array<double, 4> out{};
    for (int mu = 0; mu < 4; ++mu) {
        double s = 0.0;
        for (int nu = 0; nu < 4; ++nu) {
            s += m[mu][nu] * c[nu];
        }
        out[mu] = s;
    }
    return FourVector::from_components(out);
}

Mat4 FieldTensor::lowered() const
{
    Mat4 m{};
    m[1][0] = e.x;
    m[2][0] = e.y;
    m[3][0] = e.z;
    m[0][1] = -e.x;
    m[0][2] = -e.y;
    m[0][3] = -e.z;

    m[1][2] = b.z;
    m[2][1] = -b.z;
    m[2][3] = b.x;
    m[3][2] = -b.x;
    m[3][1] = b.y;
    m[1][3] = -b.y;
    return m;
}

FieldTensor FieldTensor::from_lowered(const Mat4& m)
{
    // average the two halves so that a slightly asymmetric input is projected
    FieldTensor f;
    f.e = {0.5 * (m[1][0] - m[0][1]), 0.5 * (m[2][0] - m[0][2]), 0.5 * (m[3][0] - m[0][3])};
    f.b = {0.5 * (m[2][3] - m[3][2]), 0.5 * (m[3][1] - m[1][3]), 0.5 * (m[1][2] - m[2][1])};
    return f;
}

Mat4 raise_mixed(const FieldTensor& f)
{
    Mat4 m = f.lowered();
    for (auto& v : m[0]) {
        v = -v;
    }
    return m;
}

}  // namespace radreact
