"""Hypothesis strategies for small exact trig polynomials."""

from hypothesis import strategies as st

from kgflow import PiRational, TrigPoly, rat


def rationals(max_num=8, max_den=4):
    return st.builds(
        rat,
        st.integers(-max_num, max_num),
        st.integers(1, max_den),
    )


def pi_rationals(max_terms=2, min_power=0, max_power=2):
    pair = st.tuples(
        st.integers(min_power, max_power), st.tuples(rationals(), rationals())
    )
    return st.lists(pair, max_size=max_terms).map(
        lambda terms: PiRational(dict(terms))
    )


def trig_polys(max_terms=4, max_freq=3, **kw):
    entry = st.tuples(
        st.tuples(
            st.integers(-max_freq, max_freq), st.integers(-max_freq, max_freq)
        ),
        pi_rationals(**kw),
    )
    return st.lists(entry, max_size=max_terms).map(
        lambda items: TrigPoly(dict(items))
    )


def real_periodic_hamiltonians(max_terms=3, max_freq=2):
    """Random real, torus-periodic H: p + conj(p) over even keys."""

    def build(items):
        p = TrigPoly(
            {(2 * m, 2 * n): c for (m, n), c in dict(items).items()}
        )
        return p + p.conjugate()

    entry = st.tuples(
        st.tuples(
            st.integers(-max_freq, max_freq), st.integers(-max_freq, max_freq)
        ),
        pi_rationals(max_terms=1, max_power=0),
    )
    return st.lists(entry, max_size=max_terms).map(build)
