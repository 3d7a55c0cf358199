from .base import ChannelsApi
from .certificates import ChannelCertificate, TheoremReport, Witness, certify, theorem_check
from .kraus import (IDENTITY, SIGMA_X, SIGMA_Y, SIGMA_Z, KrausChannel, StandardKind, amplitude_damping, apply_kraus,
                    cptp_defect, standard_channel)
from .unitary import (HamiltonianSegment, RandomUnitaryChannel, UnitaryRealization, apply_random_unitary,
                      haar_random_unitary, propagator, random_channel, to_kraus, unitarity_defect)
