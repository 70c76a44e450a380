from __future__ import annotations

import pytest
from hypothesis import strategies as st

from tgl.gff import Dataset, NodeRecord
from tgl.terms import Atom, Compound, Int

ATOM_NAMES = ("a", "b", "c", "f", "g", "h")


def ground_terms(max_leaves: int = 6) -> st.SearchStrategy:
    leaves = st.one_of(
        st.sampled_from(ATOM_NAMES).map(Atom),
        st.integers(min_value=-2, max_value=3).map(Int),
    )
    return st.recursive(
        leaves,
        lambda children: st.builds(
            Compound,
            st.sampled_from(ATOM_NAMES),
            st.lists(children, min_size=1, max_size=3),
        ),
        max_leaves=max_leaves,
    )


@pytest.fixture
def terms_strategy():
    return ground_terms()


def make_dataset(rows, skipped=0) -> Dataset:
    """rows: (id, split, label, content, neighbors) tuples."""
    return Dataset([NodeRecord(*row) for row in rows], skipped_clauses=skipped)
