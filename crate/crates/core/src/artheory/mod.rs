mod almost_split;
mod membership;
mod pairing;
mod presentation;

pub use almost_split::{
    almost_split_ending_at, almost_split_starting_at, almost_split_with_fiber, bisocle,
    check_almost_split, AlmostSplitReport, AlmostSplitTriangle, Check,
};
pub use membership::{
    cl_membership, cr_membership, membership, membership_of, MembershipReport, Side, Verdict,
    WindowResult,
};
pub use pairing::{
    coset_inverse, is_nondegenerate, pairing_matrix, phi_is_natural, phi_matrix, psi_is_natural,
    psi_matrix, tau_minus_on_morphism, tau_on_morphism, theta, xi, Coset, PairingVariant,
    PairingWitness, Witnesses,
};
pub use presentation::{
    dualize, min_proj_presentation, tau, tau_minus, transpose_over, ProjPresentation,
};
