#ifndef MMK_MAP_HPP
#define MMK_MAP_HPP

#include <memory>
#include <span>

#include "geometry.hpp"
#include "jet.hpp"
#include "moebius.hpp"
#include "profile.hpp"

namespace mmk {

enum class MapKind {
    Equivariant,      // S^3 -> S^2(1), a-Hopf construction f_kl
    HopfComplex,      // S^3 -> S^2(r), default r = 1/2
    HopfQuaternionic, // S^7 -> S^4(1/2)
    HopfOctonionic,   // S^15 -> S^8(1/2)
    HopfMoebius,      // S^3 -> S^2(r), Hopf followed by a Moebius map
    Constant,         // test helper: constant map to a fixed target point
    IdentityS3,       // test helper: identity of S^3
};

// A map between round spheres that can be evaluated on plain coordinates
// and on second-order jets (for curve differentiation).
class MapUnderTest {
public:
    static MapUnderTest equivariant(int k, int l, GeneratingProfile profile);
    static MapUnderTest hopf_complex(double target_radius = 0.5);
    static MapUnderTest hopf_quaternionic();
    static MapUnderTest hopf_octonionic();
    static MapUnderTest hopf_moebius(const MoebiusMap& m, double target_radius = 0.5);
    static MapUnderTest constant(SpherePoint target_point, int source_ambient_dim);
    static MapUnderTest identity_s3(); // test helper: identity of S^3

    MapKind kind() const { return kind_; }
    int k() const { return k_; }
    int l() const { return l_; }
    int source_ambient_dim() const { return src_dim_; }
    int target_ambient_dim() const { return tgt_dim_; }
    double source_radius() const { return 1.0; }
    double target_radius() const { return radius_; }
    const GeneratingProfile& profile() const { return profile_; }
    const MoebiusMap& moebius() const { return moebius_; }

    void eval(std::span<const double> in, std::span<double> out) const;
    void eval(std::span<const Jet2> in, std::span<Jet2> out) const;

    // Checked full-precision application; result is validated to land on
    // the declared target sphere.
    SpherePoint apply(const SpherePoint& p) const;

private:
    MapKind kind_ = MapKind::HopfComplex;
    int k_ = 0, l_ = 0;
    int src_dim_ = 4, tgt_dim_ = 3;
    double radius_ = 0.5;
    GeneratingProfile profile_;
    MoebiusMap moebius_;
    Vec constant_point_;

    template <class T>
    void eval_impl(const T* in, T* out) const;
};

} // namespace mmk

#endif
