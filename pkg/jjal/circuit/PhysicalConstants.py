from scipy import constants


class PhysicalConstants:

    """
        **Physical constants in SI units**

        Values come from ``scipy.constants`` (CODATA). The flux quantum is derived as h/2e
        so that the identity holds to machine precision.
    """

    planck = constants.h
    reduced_planck = constants.hbar
    boltzmann = constants.k
    electron_charge = constants.e
    flux_quantum = constants.h / (2 * constants.e)

    @classmethod
    def as_dict(cls):
        return {
            'flux_quantum': cls.flux_quantum,
            'reduced_planck': cls.reduced_planck,
            'planck': cls.planck,
            'boltzmann': cls.boltzmann,
            'electron_charge': cls.electron_charge,
        }
