# Counts transitions of a run whose stop test is t >= T with t advanced by dt
# in binary64, exactly as the global evolve does.
import sys

def count(dt, T):
    t, n = 0.0, 0
    while not (t >= T):
        t += dt
        n += 1
    return n, t

if __name__ == "__main__":
    for dt, T in [(0.1, 10.0), (1e-4, 10.0)]:
        n, t = count(dt, T)
        print(f"dt={dt!r} T={T!r}: transitions={n} final_t={t!r}")
