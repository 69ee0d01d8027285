"""Exception hierarchy shared across the package."""


class MolevoError(Exception):
    """Base class for all package errors."""


class SmilesError(MolevoError):
    """Malformed SMILES input (syntax, ring/branch balance, bad tokens)."""


class ValenceError(MolevoError):
    """An atom would exceed its allowed valence."""


class UnsupportedFeatureError(MolevoError):
    """Input uses a feature outside the supported dialect (stereo, isotopes, exotic elements)."""


class TokenError(MolevoError):
    """A token is not part of the active alphabet, or a token sequence is empty."""


class MatchError(MolevoError):
    """A pattern was required to match a molecule but did not."""


class TrainingError(MolevoError):
    """Training aborted (non-finite loss, missing prerequisite, bad config)."""


class CollapseError(TrainingError):
    """Codebook collapse alarm: nearly all positions map to a single entry."""


class MissingStageError(TrainingError):
    """A training stage prerequisite checkpoint is absent."""

    def __init__(self, stage: str):
        super().__init__(f"missing stage: {stage}")
        self.stage = stage


class FitnessError(MolevoError):
    """External scorer failed for a whole batch; raw output is preserved."""

    def __init__(self, message: str, raw_output: str = ""):
        super().__init__(message)
        self.raw_output = raw_output


class ConfigError(MolevoError):
    """Invalid run configuration."""
