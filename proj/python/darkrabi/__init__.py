"""N-qubit M-photon Rabi model: parity chains, dark states, spectra."""

from ._core import (
    Amplitude,
    ChainEigs,
    DarkLikeState,
    FamilyCondition,
    HorizontalLine,
    ModelParams,
    Relation,
    ScanCandidate,
    ScanResult,
    SpectrumSweep,
    StabilityRegime,
    StabilityReport,
    SubspaceLabel,
    SweepOptions,
    SweepPoint,
    VerifyReport,
    all_labels,
    build_states,
    catalog_match,
    chain_matrix,
    chain_sequence,
    chain_union_spectrum,
    coupling_matrix,
    dense_oracle,
    detect_horizontal,
    diagonalize_chain,
    generic_scan,
    lift_to_multiphoton,
    offdiag_factor,
    parity_sectors,
    sign_pattern_eigs,
    snap_coupling,
    stability_check,
    sweep,
    verify_state,
    zero_modes,
)

__version__ = "0.1.0"
