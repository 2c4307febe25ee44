"""Repair plan and transcript models."""

from pydantic import BaseModel, ConfigDict, Field


class HelperRequest(BaseModel):
    """What one helper transmits: for each reduced row a', either the single
    coordinate ``pairs[a'][0]`` or, when ``summed`` is set, the sum of the
    two coordinates in ``pairs[a']``."""

    model_config = ConfigDict(frozen=True)

    pairs: tuple[tuple[int, int], ...]
    summed: bool

    @property
    def coordinates(self) -> tuple[int, ...]:
        """Coordinates read when nothing is summed."""
        return tuple(pair[0] for pair in self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)


class RepairPlan(BaseModel):
    """Which functionals every helper sends to rebuild ``failed``.

    role 0 sends C_j(b) for b_i = 0, role 1 sends C_j(b) for b_i = 1,
    role 2 sends C_j(b) + C_j(b + 2^i) for b_i = 0, where i is the group.
    The same request applies to every helper.
    """

    model_config = ConfigDict(frozen=True)

    failed: int
    group: int
    role: int = Field(ge=0, le=2)
    request: HelperRequest

    @property
    def symbols_per_helper(self) -> int:
        return len(self.request)


class RepairTranscript(BaseModel):
    """Outcome of one repair: who helped and how much was downloaded."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    failed: int
    helpers: tuple[int, ...]
    stripes: int = 1
    symbols_downloaded: int
    cut_set_bound: int
    recovered: object = Field(default=None, exclude=True, repr=False)

    @property
    def symbols_per_stripe(self) -> int:
        return self.symbols_downloaded // max(self.stripes, 1)

    @property
    def optimal(self) -> bool:
        return self.symbols_per_stripe == self.cut_set_bound
