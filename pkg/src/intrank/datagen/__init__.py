"""Data generation: verified (integrand, integral) pairs and polynomial tools."""

from .dataset import (DatagenConfig, generate_pairs, read_pairs,
                      record_to_pair, pair_to_record, write_pairs)
from .generators import (BWD, FWD, GENERATOR_NAMES, IBP, LIOUVILLE, SPECIAL,
                         SUB, DataPair, DegeneratePair, NoApplicablePair,
                         NotIntegrableByTable, builtin_seed_pairs, gen_bwd,
                         gen_fwd, gen_ibp, gen_sub, ibp_combine,
                         integrate_table, verify_pair)
from .liouville import (LiouvilleConfig, LiouvilleParts, ZeroDenominator,
                        gen_liouville, gen_liouville_mixed,
                        gen_special_liouville)
from .poly import (NotCoprimeFactors, Polynomial, ZeroPolynomial,
                   partial_fraction, poly_gcd, square_free_factor)
from .special import EmptyGroup, SpecialConfig, gen_special, gen_special_bwd
