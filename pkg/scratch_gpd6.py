"""Oracle for filler laws and their pullback stability."""
import time
from ml2.gpdmodel import (
    model_instances, filler_law_report, sigma_filler_stability_report,
)

for label, gamma, a, b, k in model_instances():
    if b is None:
        continue
    t0 = time.time()
    rep = filler_law_report(a, b)
    assert rep.passed, (label, rep.to_json())
    rep2 = sigma_filler_stability_report(a, b, k)
    assert rep2.passed, (label, rep2.to_json())
    print(f"{label}: filler laws ok ({rep.checked} squares, "
          f"{rep2.checked} stability problems, {time.time()-t0:.1f}s)")
print("all filler checks passed")
