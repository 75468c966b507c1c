"""Oracle for the bundled model certificates."""
import time
from ml2.gpdmodel import model_instances, model_cert, run_model_suite

t_all = time.time()
insts = model_instances()
print("instances:", [label for label, *_ in insts])
for label, gamma, a, b, k in insts:
    t0 = time.time()
    cert = model_cert(label, gamma, a, b, base_change=k)
    status = "PASS" if cert.passed else "FAIL"
    print(f"{label}: {status} ({cert.checked} checks, "
          f"{time.time()-t0:.1f}s)")
    if not cert.passed:
        for name, rep in cert.reports:
            if not rep.passed:
                print("  ", name, rep.failures[:2])
print(f"total {time.time()-t_all:.1f}s")
