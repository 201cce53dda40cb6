"""Pure-Python simulation kernel; reference behavior for the compiled one."""
import numpy as np


def run(indptr, indices, chips0, motor_vertex, motor_trans_len, motor_cyc_len,
        motor_off, motor_bits, max_steps):
    """Simulate until the first repeated full state.

    Returns ``(t0, period, positions, firing)`` with arrays of shape
    ``(t0 + period, n)``; ``t0 == -1`` means no repeat within
    ``max_steps`` steps (arrays are then ``None``).
    """
    n = len(chips0)
    adj = [indices[indptr[v]:indptr[v + 1]].tolist() for v in range(n)]
    deg = [len(a) for a in adj]
    motors = list(zip(motor_vertex.tolist(), motor_trans_len.tolist(),
                      motor_cyc_len.tolist(), motor_off.tolist()))
    bits = motor_bits.tolist()
    is_motor = [False] * n
    for m, *_ in motors:
        is_motor[m] = True

    chips = chips0.tolist()
    seen = {}
    positions = []
    firing = []
    t = 0
    while t <= max_steps:
        phases = tuple(t if t < tl else tl + (t - tl) % cl for _, tl, cl, _ in motors)
        key = (tuple(chips), phases)
        s = seen.get(key)
        if s is not None:
            return (s, t - s, np.array(positions, dtype=np.int64).reshape(t, n),
                    np.array(firing, dtype=np.uint8).reshape(t, n))
        seen[key] = t
        f = [1 if chips[v] >= deg[v] else 0 for v in range(n)]
        for (m, _, _, off), ph in zip(motors, phases):
            f[m] = bits[off + ph]
        positions.append(chips)
        firing.append(f)
        nxt = chips[:]
        for v in range(n):
            if f[v]:
                nxt[v] -= deg[v]
                for w in adj[v]:
                    nxt[w] += 1
        chips = nxt
        t += 1
    return -1, 0, None, None
