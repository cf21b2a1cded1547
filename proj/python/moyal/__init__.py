"""Phase-space quantum mechanics: Wigner functions, star products, Weyl
symbols, Bohm fields, fractional Fourier shadows and Clifford algebras."""

from ._moyal import (
    CharacteristicFunction,
    ConditionalField,
    Grid,
    MoyalError,
    Multivector,
    PhysicsConfig,
    PolySymbol,
    Signature,
    ValidationError,
    Wavefunction,
    baker_bracket,
    conditional_momentum,
    conditional_position,
    frft,
    from_momentum,
    gaussian_packet,
    guidance_from_phase,
    marginals,
    moyal_bracket,
    poisson_bracket,
    polar_decompose,
    purity,
    quantum_potential,
    run_scenario,
    run_suite,
    split_step_evolve,
    star_poly,
    suite_names,
    superpose,
    to_momentum,
    version,
    wigner_transform,
)

__version__ = version()
