/// `(order n, D1^(-n/2))` in the left copy `phi1`, `psb1` and `f1`.
pub const D1: [(i32, &str); 3] = [
    (1, "2*i/w*exp((phi1+phi2)/2)*psb1*f1 + 2/w^2*exp(phi1+phi2)"),
    (
        2,
        "i/w*exp((phi1+phi2)/2)*f1*(psb1*phi1_1 + psb1_1) - 2/w^2*exp(phi1+phi2)*phi1_1 \
         - 4*i/w^3*exp(3*(phi1+phi2)/2)*f1*psb1 + 2/w^4*exp(2*(phi1+phi2))",
    ),
    (
        3,
        "i/(2*w)*exp((phi1+phi2)/2)*(psb1*phi1_2 + psb1_1*phi1_1 + psb1_2)*f1 \
         + 1/w^2*exp(phi1+phi2)*(phi1_2 + phi1_1^2) - 2*i/w^3*exp(3*(phi1+phi2)/2)*(3*psb1*phi1_1 + psb1_1)*f1 \
         - 4/w^4*exp(2*(phi1+phi2))*phi1_1 - 8*i/w^5*exp(5*(phi1+phi2)/2)*f1*psb1 + 8/(3*w^6)*exp(3*(phi1+phi2))",
    ),
];

/// `(order n, D2^(-n/2))`.
pub const D2: [(i32, &str); 3] = [
    (1, "2*i/w*exp(-(phi1+phi2)/2)*psb1*f1 + 2/w^2*exp(-(phi1+phi2))"),
    (
        2,
        "i/w*exp(-(phi1+phi2)/2)*(psb1*phi1_1 - psb1_1)*f1 + 2/w^2*exp(-(phi1+phi2))*phi1_1 \
         + 4*i/w^3*exp(-3*(phi1+phi2)/2)*psb1*f1 + 2/w^4*exp(-2*(phi1+phi2))",
    ),
    (
        3,
        "i/(2*w)*exp(-(phi1+phi2)/2)*f1*(psb1*phi1_2 + psb1_1*phi1_1 - psb1_2) \
         - 1/w^2*exp(-(phi1+phi2))*(phi1_2 - phi1_1^2) + 2*i/w^3*exp(-3*(phi1+phi2)/2)*(3*psb1*phi1_1 - psb1_1)*f1 \
         + 4/w^4*exp(-2*(phi1+phi2))*phi1_1 + 8*i/w^5*exp(-5*(phi1+phi2)/2)*psb1*f1 \
         + 8/(3*w^6)*exp(-3*(phi1+phi2))",
    ),
];

/// `D2^(-1)` as first printed: `exp(+(phi1+phi2)/2)` on the leading fermion term and
/// the opposite sign on `phi1_1 exp(-(phi1+phi2))`.
pub const D2_ORDER2_PRINTED: &str = "i/w*exp((phi1+phi2)/2)*(psb1*phi1_1 - psb1_1)*f1 \
    - 2/w^2*exp(-(phi1+phi2))*phi1_1 + 4*i/w^3*exp(-3*(phi1+phi2)/2)*psb1*f1 + 2/w^4*exp(-2*(phi1+phi2))";

/// Defect term of the momentum in `phip`, `psbp`, `f1`.
pub const MOMENTUM_DEFECT: &str = "4/w^2*cosh(phip) - 2*i/w*cosh(phip/2)*f1*psbp";

/// Defect term of the energy.
pub const ENERGY_DEFECT: &str = "1/w^2*(phip_2*sinh(phip) + 1/2*phip_1^2*cosh(phip)) \
    + 1/w^6*(6*cosh(phip) - 2/3*cosh(3*phip)) - i/(2*w)*cosh(phip/2)*f1*psbp_2 \
    - i/(4*w)*sinh(phip/2)*(phip_1*f1*psbp_1 + phip_2*f1*psbp) + 6*i/w^5*cosh(phip/2)*sinh(phip)^2*f1*psbp";
