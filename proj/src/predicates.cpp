#include "phshape/predicates.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <limits>

namespace phshape {

namespace {

using Big = boost::multiprecision::int256_t;

constexpr double kEps = std::numeric_limits<double>::epsilon();

inline int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }
inline int sign_of(const Big& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

} // namespace

int orient2d(const IPoint& a, const IPoint& b, const IPoint& c) {
    const double acx = double(a[0] - c[0]), acy = double(a[1] - c[1]);
    const double bcx = double(b[0] - c[0]), bcy = double(b[1] - c[1]);
    const double det = acx * bcy - acy * bcx;
    const double perm = std::abs(acx * bcy) + std::abs(acy * bcx);
    if (std::abs(det) > 8.0 * kEps * perm) return sign_of(det);
    const Big e = Big(a[0] - c[0]) * Big(b[1] - c[1]) - Big(a[1] - c[1]) * Big(b[0] - c[0]);
    return sign_of(e);
}

int orient3d(const IPoint& a, const IPoint& b, const IPoint& c, const IPoint& d) {
    const double adx = double(a[0] - d[0]), ady = double(a[1] - d[1]), adz = double(a[2] - d[2]);
    const double bdx = double(b[0] - d[0]), bdy = double(b[1] - d[1]), bdz = double(b[2] - d[2]);
    const double cdx = double(c[0] - d[0]), cdy = double(c[1] - d[1]), cdz = double(c[2] - d[2]);
    const double m1 = bdy * cdz - bdz * cdy;
    const double m2 = bdz * cdx - bdx * cdz;
    const double m3 = bdx * cdy - bdy * cdx;
    const double det = adx * m1 + ady * m2 + adz * m3;
    const double perm = std::abs(adx) * (std::abs(bdy * cdz) + std::abs(bdz * cdy)) +
                        std::abs(ady) * (std::abs(bdz * cdx) + std::abs(bdx * cdz)) +
                        std::abs(adz) * (std::abs(bdx * cdy) + std::abs(bdy * cdx));
    if (std::abs(det) > 16.0 * kEps * perm) return sign_of(det);
    const Big Adx = a[0] - d[0], Ady = a[1] - d[1], Adz = a[2] - d[2];
    const Big Bdx = b[0] - d[0], Bdy = b[1] - d[1], Bdz = b[2] - d[2];
    const Big Cdx = c[0] - d[0], Cdy = c[1] - d[1], Cdz = c[2] - d[2];
    const Big e = Adx * (Bdy * Cdz - Bdz * Cdy) + Ady * (Bdz * Cdx - Bdx * Cdz) +
                  Adz * (Bdx * Cdy - Bdy * Cdx);
    return sign_of(e);
}

int incircle2d(const IPoint& a, const IPoint& b, const IPoint& c, const IPoint& d) {
    const double adx = double(a[0] - d[0]), ady = double(a[1] - d[1]);
    const double bdx = double(b[0] - d[0]), bdy = double(b[1] - d[1]);
    const double cdx = double(c[0] - d[0]), cdy = double(c[1] - d[1]);
    const double ad2 = adx * adx + ady * ady;
    const double bd2 = bdx * bdx + bdy * bdy;
    const double cd2 = cdx * cdx + cdy * cdy;
    const double det = ad2 * (bdx * cdy - bdy * cdx) + bd2 * (cdx * ady - cdy * adx) +
                       cd2 * (adx * bdy - ady * bdx);
    const double perm = ad2 * (std::abs(bdx * cdy) + std::abs(bdy * cdx)) +
                        bd2 * (std::abs(cdx * ady) + std::abs(cdy * adx)) +
                        cd2 * (std::abs(adx * bdy) + std::abs(ady * bdx));
    if (std::abs(det) > 32.0 * kEps * perm) return sign_of(det);
    const Big Adx = a[0] - d[0], Ady = a[1] - d[1];
    const Big Bdx = b[0] - d[0], Bdy = b[1] - d[1];
    const Big Cdx = c[0] - d[0], Cdy = c[1] - d[1];
    const Big Ad2 = Adx * Adx + Ady * Ady;
    const Big Bd2 = Bdx * Bdx + Bdy * Bdy;
    const Big Cd2 = Cdx * Cdx + Cdy * Cdy;
    const Big e = Ad2 * (Bdx * Cdy - Bdy * Cdx) + Bd2 * (Cdx * Ady - Cdy * Adx) +
                  Cd2 * (Adx * Bdy - Ady * Bdx);
    return sign_of(e);
}

int insphere3d(const IPoint& a, const IPoint& b, const IPoint& c, const IPoint& d,
               const IPoint& e) {
    const double aex = double(a[0] - e[0]), aey = double(a[1] - e[1]), aez = double(a[2] - e[2]);
    const double bex = double(b[0] - e[0]), bey = double(b[1] - e[1]), bez = double(b[2] - e[2]);
    const double cex = double(c[0] - e[0]), cey = double(c[1] - e[1]), cez = double(c[2] - e[2]);
    const double dex = double(d[0] - e[0]), dey = double(d[1] - e[1]), dez = double(d[2] - e[2]);

    const double ab = aex * bey - bex * aey;
    const double bc = bex * cey - cex * bey;
    const double cd = cex * dey - dex * cey;
    const double da = dex * aey - aex * dey;
    const double ac = aex * cey - cex * aey;
    const double bd = bex * dey - dex * bey;

    const double abc = aez * bc - bez * ac + cez * ab;
    const double bcd = bez * cd - cez * bd + dez * bc;
    const double cda = cez * da + dez * ac + aez * cd;
    const double dab = dez * ab + aez * bd + bez * da;

    const double alift = aex * aex + aey * aey + aez * aez;
    const double blift = bex * bex + bey * bey + bez * bez;
    const double clift = cex * cex + cey * cey + cez * cez;
    const double dlift = dex * dex + dey * dey + dez * dez;

    const double det = (dlift * abc - clift * dab) + (blift * cda - alift * bcd);

    const double aezp = std::abs(aez), bezp = std::abs(bez), cezp = std::abs(cez),
                 dezp = std::abs(dez);
    const double abp = std::abs(ab), bcp = std::abs(bc), cdp = std::abs(cd), dap = std::abs(da),
                 acp = std::abs(ac), bdp = std::abs(bd);
    const double perm = dlift * (aezp * bcp + bezp * acp + cezp * abp) +
                        clift * (dezp * abp + aezp * bdp + bezp * dap) +
                        blift * (cezp * dap + dezp * acp + aezp * cdp) +
                        alift * (bezp * cdp + cezp * bdp + dezp * bcp);
    if (std::abs(det) > 64.0 * kEps * perm) return sign_of(det);

    const Big Ax = a[0] - e[0], Ay = a[1] - e[1], Az = a[2] - e[2];
    const Big Bx = b[0] - e[0], By = b[1] - e[1], Bz = b[2] - e[2];
    const Big Cx = c[0] - e[0], Cy = c[1] - e[1], Cz = c[2] - e[2];
    const Big Dx = d[0] - e[0], Dy = d[1] - e[1], Dz = d[2] - e[2];
    const Big AB = Ax * By - Bx * Ay;
    const Big BC = Bx * Cy - Cx * By;
    const Big CD = Cx * Dy - Dx * Cy;
    const Big DA = Dx * Ay - Ax * Dy;
    const Big AC = Ax * Cy - Cx * Ay;
    const Big BD = Bx * Dy - Dx * By;
    const Big ABC = Az * BC - Bz * AC + Cz * AB;
    const Big BCD = Bz * CD - Cz * BD + Dz * BC;
    const Big CDA = Cz * DA + Dz * AC + Az * CD;
    const Big DAB = Dz * AB + Az * BD + Bz * DA;
    const Big AL = Ax * Ax + Ay * Ay + Az * Az;
    const Big BL = Bx * Bx + By * By + Bz * Bz;
    const Big CL = Cx * Cx + Cy * Cy + Cz * Cz;
    const Big DL = Dx * Dx + Dy * Dy + Dz * Dz;
    const Big E = (DL * ABC - CL * DAB) + (BL * CDA - AL * BCD);
    return sign_of(E);
}

int dot_sign(const IPoint& a, const IPoint& b, const IPoint& p) {
    __int128 s = 0;
    for (int k = 0; k < 3; ++k)
        s += (__int128)(p[k] - a[k]) * (__int128)(b[k] - a[k]);
    return s > 0 ? 1 : (s < 0 ? -1 : 0);
}

} // namespace phshape
