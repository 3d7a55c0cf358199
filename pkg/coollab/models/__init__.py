from .base import ModelsApi, build_model_channel, model_from_payload, model_to_payload
from .ensemble import NoiseEnsemble
from .resonator import (BlockState, MRParams, dressed_angle, mr_apply, mr_block_hamiltonian, mr_block_kraus,
                        mr_block_kraus_bare, mr_channel, mr_closed_form, mr_dressed_energies, mr_ground_energy, mr_mu,
                        mr_yn, random_block_state)
from .stirap import FIGURE1_ALPHA, FIGURE1_THETA, NoisyParameter, StirapParams, figure1_params, stirap_channel, \
    stirap_unitary
from .two_level import auxiliary_y, two_level_channel, two_level_closed_form, two_level_kraus
