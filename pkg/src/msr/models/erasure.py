"""Erasure classification models."""

from pydantic import BaseModel, ConfigDict, model_validator

from ..exceptions import InvalidParametersError

# Weight of each group type in |F|: all three, two of three (x3), one of three (x3).
TYPE_WEIGHTS = (3, 2, 2, 2, 1, 1, 1)

# Within-group failure shape of each type, as node roles 0/1/2.
TYPE_ROLES: tuple[tuple[int, ...], ...] = (
    (0, 1, 2),
    (0, 1),
    (0, 2),
    (1, 2),
    (0,),
    (1,),
    (2,),
)


def weighted_size(z: tuple[int, ...]) -> int:
    """3z1 + 2z2 + 2z3 + 2z4 + z5 + z6 + z7."""
    return sum(w * c for w, c in zip(TYPE_WEIGHTS, z))


class ErasureType(BaseModel):
    """Type vector z of an erasure pattern and its seven group sets.

    ``groups[t]`` holds the group indices whose failed roles equal
    ``TYPE_ROLES[t]``; ``z[t] == len(groups[t])``.
    """

    model_config = ConfigDict(frozen=True)

    z: tuple[int, int, int, int, int, int, int]
    groups: tuple[tuple[int, ...], ...]

    @model_validator(mode="after")
    def _check_counts(self) -> "ErasureType":
        if len(self.groups) != 7:
            raise InvalidParametersError("An erasure type has exactly seven group sets")
        if any(len(g) != c for g, c in zip(self.groups, self.z)):
            raise InvalidParametersError("z must count the members of each group set")
        members = [g for gs in self.groups for g in gs]
        if len(members) != len(set(members)):
            raise InvalidParametersError("Group sets must be disjoint")
        return self

    @property
    def total(self) -> int:
        """z = z1 + ... + z7, the number of touched groups."""
        return sum(self.z)

    @property
    def size(self) -> int:
        return weighted_size(self.z)

    def type_of(self, group: int) -> int | None:
        """Index t (0-based) of the set holding ``group``, or None."""
        for t, members in enumerate(self.groups):
            if group in members:
                return t
        return None


class GroupSwap(BaseModel):
    """Exchange of groups i < j: coordinate digits i and j and the lambda sextets."""

    model_config = ConfigDict(frozen=True)

    i: int
    j: int

    @model_validator(mode="after")
    def _check_order(self) -> "GroupSwap":
        if not 0 <= self.i < self.j:
            raise InvalidParametersError(
                f"A group swap needs 0 <= i < j, got i={self.i}, j={self.j}"
            )
        return self

    def check_groups(self, groups: int) -> None:
        if self.j >= groups:
            raise InvalidParametersError(
                f"Group {self.j} does not exist in a code with {groups} groups"
            )
