/// `(order n, Gamma21^(n/2))`.
pub const GAMMA21: [(i32, &str); 6] = [
    (-1, "1"),
    (0, "-phi_1"),
    (1, "1/2*phi_2 + 1/2*phi_1^2"),
    (2, "-1/2*phi_1*phi_2 - 1/4*phi_3 - i/4*psb*psb_1*phi_1"),
    (
        3,
        "1/8*phi_2^2 + 1/8*phi_4 + 1/4*phi_3*phi_1 - 1/4*phi_2*phi_1^2 - 1/8*phi_1^4 + i/4*psb*psb_2*phi_1 \
         + i/4*psb*psb_1*phi_2 + i/4*psb*psb_1*phi_1^2",
    ),
    (
        4,
        "-1/8*phi_2*phi_3 - 1/16*phi_5 + 1/2*phi_2^2*phi_1 - 1/8*phi_4*phi_1 + 1/4*phi_1^2*phi_3 + 1/2*phi_1^3*phi_2 \
         - 5*i/16*psb*psb_2*phi_2 - 3*i/16*psb*psb_1*phi_3 - 3*i/16*psb*psb_3*phi_1 - i/8*psb_1*psb_2*phi_1 \
         - 3*i/8*psb*psb_1*phi_2*phi_1 + i/8*psb*psb_1*phi_1^3 - i/4*psb*psb_2*phi_1^2",
    ),
];

pub const GAMMA31: [(i32, &str); 4] = [
    (0, "-si*psb"),
    (1, "si/2*(psb_1 + psb*phi_1)"),
    (2, "-si/4*(psb_2 + psb_1*phi_1 + psb*phi_2)"),
    (3, "si/8*(psb_3 + psb_2*phi_1 + psb_1*phi_2 - psb_1*phi_1^2 + psb*phi_3 - psb*phi_2*phi_1 - psb*phi_1^3)"),
];

pub const GAMMA12: [(i32, &str); 5] = [
    (1, "1"),
    (2, "phi_1"),
    (3, "-1/2*phi_2 + 1/2*phi_1^2"),
    (4, "1/4*phi_3 - 1/2*phi_1*phi_2 + i/4*psb*psb_1*phi_1"),
    (
        5,
        "1/8*phi_2^2 - 1/8*phi_4 + 1/4*phi_3*phi_1 + 1/4*phi_2*phi_1^2 - 1/8*phi_1^4 - i/4*psb*psb_1*phi_2 \
         + i/4*psb*psb_1*phi_1^2 - i/4*psb*psb_2*phi_1",
    ),
];

pub const GAMMA32: [(i32, &str); 5] = [
    (0, "0"),
    (1, "-si*psb"),
    (2, "si/2*(psb_1 - psb*phi_1)"),
    (3, "si/4*(psb*phi_2 + psb_1*phi_1 - psb_2)"),
    (4, "si/8*(psb_3 - psb_2*phi_1 - psb_1*phi_2 - psb_1*phi_1^2 - psb*phi_3 - psb*phi_1*phi_2 + psb*phi_1^3)"),
];

/// `(set, order n, density of I_set^(-n/2))`.
pub const GENERATED_DENSITIES: [(u8, i32, &str); 6] = [
    (1, 1, "1/2*(phi_2 + phi_1^2 - i*psb*psb_1)"),
    (1, 2, "-1/4*(2*phi_1*phi_2 + phi_3 - i*psb*psb_2)"),
    (
        1,
        3,
        "1/8*(phi_2^2 + phi_4 + 2*phi_3*phi_1 - 2*phi_2*phi_1^2 - phi_1^4 + i*psb*psb_1*phi_2 \
         + 3*i*psb*psb_1*phi_1^2 + i*psb*psb_2*phi_1 - i*psb*psb_3)",
    ),
    (2, 1, "-1/2*(phi_2 - phi_1^2 + i*psb*psb_1)"),
    (2, 2, "-1/4*(2*phi_1*phi_2 - phi_3 - i*psb*psb_2)"),
    (
        2,
        3,
        "1/8*(phi_2^2 - phi_4 + 2*phi_3*phi_1 + 2*phi_2*phi_1^2 - phi_1^4 - i*psb*psb_1*phi_2 \
         + 3*i*psb*psb_1*phi_1^2 - i*psb*psb_2*phi_1 - i*psb*psb_3)",
    ),
];

pub const MOMENTUM_DENSITY: &str = "phi_1^2 - i*psb*psb_1";

pub const ENERGY_DENSITY: &str = "1/4*(phi_2^2 - phi_1^4 + 2*phi_3*phi_1 - i*psb*psb_3 + 3*i*phi_1^2*psb*psb_1)";

pub const MOMENTUM_FLUX_T3: &str = "1/2*phi_1*phi_3 - 3/4*phi_1^4 - 1/4*phi_2^2 + 9*i/4*phi_1^2*psb*psb_1 \
    + i/2*psb_1*psb_2 - i/4*psb*psb_3";

pub const MOMENTUM_FLUX_T5: &str = "5/8*phi_1^6 + 1/16*phi_3^2 - 1/8*phi_2*phi_4 + 1/8*phi_1*phi_5 \
    - 5/8*phi_1^2*phi_2^2 - 5/4*phi_1^3*phi_3 + i*psb*psb_1*(35/16*phi_1*phi_3 + 5/8*phi_2^2 - 25/8*phi_1^4) \
    + 15*i/16*phi_1*phi_2*psb*psb_2 + 15*i/16*phi_1^2*psb*psb_3 - 5*i/8*phi_1^2*psb_1*psb_2 \
    - i/16*psb*psb_5 + i/8*psb_1*psb_4 - i/8*psb_2*psb_3";

/// Bulk energy flux for t3 as first printed; the `phi_1^4 psb psb_1` coefficient is off.
pub const ENERGY_FLUX_T3_PRINTED: &str = "1/8*phi_1*phi_5 + 1/4*phi_1^6 + 1/16*phi_3^2 - 3/2*phi_1^2*phi_2^2 \
    - phi_1^3*phi_3 - 3*i/16*(phi_1^4 - 5*phi_2^2 - 9*phi_1*phi_3)*psb*psb_1 + 3*i/2*phi_1*phi_2*psb*psb_2 \
    + 3*i/4*phi_1^2*psb*psb_3 - i/16*psb*psb_5 + i/16*psb_1*psb_4 - i/16*psb_2*psb_3";

/// Bulk energy flux for t3, as restated per field copy next to the defect.
pub const ENERGY_FLUX_T3: &str = "1/8*phi_1*phi_5 + 1/4*phi_1^6 + 1/16*phi_3^2 \
    - 3/2*phi_1^2*phi_2^2 - phi_1^3*phi_3 - 21*i/16*phi_1^4*psb*psb_1 + 15*i/16*phi_2^2*psb*psb_1 \
    + 27*i/16*phi_1*phi_3*psb*psb_1 + 3*i/2*phi_1*phi_2*psb*psb_2 + 3*i/4*phi_1^2*psb*psb_3 \
    - i/16*psb*psb_5 + i/16*psb_1*psb_4 - i/16*psb_2*psb_3";

pub const ENERGY_FLUX_T5: &str = "1/64*phi_2^4 - 15/64*phi_1^8 - 1/64*phi_4^2 - 3/2*phi_1^2*phi_3^2 \
    + 1/32*phi_1*phi_7 - 3/8*phi_1^3*phi_5 + 125/32*phi_1^4*phi_2^2 + 25/16*phi_1^5*phi_3 + 1/32*phi_3*phi_5 \
    - 41/16*phi_1*phi_2^2*phi_3 - 27/16*phi_1^2*phi_2*phi_4 \
    + i*psb*psb_2*(69/64*phi_1*phi_4 - 335/64*phi_1^3*phi_2 + 127/64*phi_2*phi_3) \
    + 59*i/64*phi_1*phi_2*psb*psb_4 \
    + i*psb*psb_1*(23/32*phi_1*phi_5 + 55/32*phi_1^6 - 285/32*phi_1^2*phi_2^2 - 375/64*phi_1^3*phi_3 \
    + 89/64*phi_2*phi_4 + 73/64*phi_3^2) \
    + i*psb*psb_3*(111/64*phi_1*phi_3 - 85/64*phi_1^4 + 7/8*phi_2^2) \
    - i/64*psb*psb_7 + i/64*psb_1*psb_6 + 33*i/64*phi_1*phi_2*psb_1*psb_3 - i/64*psb_2*psb_5 \
    - i*psb_1*psb_2*(9/64*phi_1*phi_3 + 5/32*phi_1^4 + 39/64*phi_2^2) + 21*i/64*phi_1^2*psb_2*psb_3 \
    + 9*i/64*phi_1^2*psb_1*psb_4 + i/32*psb_3*psb_4 + 9*i/32*phi_1^2*psb*psb_5";
