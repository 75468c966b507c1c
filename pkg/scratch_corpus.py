"""Oracle: every corpus file kernel-checks; equalities are sound."""
import pathlib
import time

from ml2.kernel import (
    Judgement, check_judgement, judgement_holds, validate_signature,
    admit_equation, convertible, ConversionState, KernelError,
)
from ml2.parser import parse, elaborate, print_source
from ml2.interp import interpret, standard_environments

ENVS = standard_environments()
root = pathlib.Path("corpus")
files = sorted(root.glob("*.ml2"))
assert files, "no corpus files"
total_eq = 0
sweep = []  # (file, Judgement) for sound equalities

for path in files:
    text = path.read_text()
    src = parse(text)
    # round trip
    assert parse(print_source(src)).declarations is not None
    sig, asserts = elaborate(src)
    validate_signature(sig)
    state = ConversionState()
    for a in asserts:
        if a.kind == "check":
            check_judgement(Judgement("term", a.context, a.payload), sig,
                            state)
        elif a.kind == "check-type":
            check_judgement(Judgement("type", a.context, a.payload), sig,
                            state)
        elif a.kind == "equal-type":
            assert judgement_holds(
                Judgement("type-eq", a.context, a.payload), sig, state), \
                (path.name, a.text)
        elif a.kind == "equal":
            t, u, at = a.payload
            if a.witness is not None:
                state = admit_equation(a.context, t, u, at, a.witness,
                                       sig, state)
            assert convertible(a.context, t, u, at, sig, state), \
                (path.name, a.text)
            total_eq += 1
            sweep.append((path.name,
                          Judgement("term-eq", a.context, a.payload), sig,
                          state))
        elif a.kind == "not-equal":
            t, u, at = a.payload
            assert not convertible(a.context, t, u, at, sig, state), \
                (path.name, a.text)
        else:
            raise AssertionError(a.kind)
    print(f"{path.name}: ok ({len(asserts)} assertions)")

print(f"total term equalities: {total_eq}")
assert total_eq >= 60, total_eq

t0 = time.time()
for env in ENVS:
    te = time.time()
    for name, j, sig, state in sweep:
        assert interpret(j, env, sig, state), (env.label, name, j)
    print(f"sound in {env.label} ({time.time()-te:.1f}s)")
print(f"soundness sweep ok ({time.time()-t0:.1f}s)")
