"""Independent high-precision oracle for the Gaussian bound values frozen in
the C++ tests. Builds covariance matrices directly (no shared code with the
library) and diagonalizes i*Omega*V with mpmath at 50 digits."""
import mpmath as mp

mp.mp.dps = 50


def g(x):
    x = mp.mpf(x)
    if x == 0:
        return mp.mpf(0)
    return (1 + x) * mp.log(1 + x, 2) - x * mp.log(x, 2)


def omega(n):
    w = mp.zeros(2 * n, 2 * n)
    for k in range(n):
        w[2 * k, 2 * k + 1] = 1
        w[2 * k + 1, 2 * k] = -1
    return w


def embed(s, modes, n):
    full = mp.eye(2 * n)
    idx = []
    for m in modes:
        idx += [2 * m, 2 * m + 1]
    for i, a in enumerate(idx):
        for j, b in enumerate(idx):
            full[a, b] = s[i, j]
    return full


def bs(t):
    t = mp.mpf(t)
    a, b = mp.sqrt(t), mp.sqrt(1 - t)
    return mp.matrix([[a, 0, b, 0], [0, a, 0, b], [-b, 0, a, 0], [0, -b, 0, a]])


def tms(G):
    G = mp.mpf(G)
    a, b = mp.sqrt(G), mp.sqrt(G - 1)
    return mp.matrix([[a, 0, b, 0], [0, a, 0, -b], [b, 0, a, 0], [0, -b, 0, a]])


def entropy(V, modes):
    idx = []
    for m in modes:
        idx += [2 * m, 2 * m + 1]
    k = len(modes)
    sub = mp.matrix(2 * k, 2 * k)
    for i, a in enumerate(idx):
        for j, b in enumerate(idx):
            sub[i, j] = V[a, b]
    try:
        ev = mp.eig((mp.mpc(0, 1) * omega(k)) * sub, left=False, right=False)
    except RuntimeError:
        # degenerate spectra can stall the general QR; i L^T Omega L is Hermitian
        # with the same +-nu spectrum when sub = L L^T
        L = mp.cholesky(sub)
        ev = mp.eighe(mp.mpc(0, 1) * (L.T * omega(k) * L), eigvals_only=True)
    nus = sorted([abs(mp.re(e)) for e in ev])[::2]
    return sum(g((nu - 1) / 2) for nu in nus)


# modes: 0=A(input) 1=env1 2=env2 3=F1 4=F2
def chain(order, T, G, NS, eta2=0.5, eta3=0.5):
    n = 5
    V = mp.eye(2 * n)
    V[0, 0] = V[1, 1] = 2 * mp.mpf(NS) + 1
    if order == "loss_then_amp":
        steps = [(bs(T), [0, 1]), (tms(G), [0, 2])]
    else:
        steps = [(tms(G), [0, 2]), (bs(T), [0, 1])]
    steps += [(bs(eta2), [1, 3]), (bs(eta3), [2, 4])]
    for s, modes in steps:
        S = embed(s, modes, n)
        V = S * V * S.T
    h_be = entropy(V, [0, 1, 2]) - entropy(V, [1, 2])
    h_bf = entropy(V, [0, 3, 4]) - entropy(V, [3, 4])
    return h_be, h_bf


def gew16(eta, nb, ns):
    G = 1 + (1 - mp.mpf(eta)) * nb
    T = mp.mpf(eta) / G
    a, b = chain("loss_then_amp", T, G, ns)
    return (a + b) / 2


def dsw18(eta, nb, ns):
    T = mp.mpf(eta) - (1 - mp.mpf(eta)) * nb
    G = mp.mpf(eta) / T
    return chain("amp_then_loss", T, G, ns)[0]


def p(label, v):
    print(f"{label} = {mp.nstr(mp.re(v), 17)}")


if __name__ == "__main__":
    p("g(0.075)", g(0.075))
    p("pure_loss(0.5,0.1)", g(0.1 * 1.5 / 2) - g(0.1 * 0.5 / 2))
    p("pure_amp(2,1)", g(2) - g(1))
    p("plob(0.9,1)", -mp.log(mp.mpf('0.1') * mp.mpf('0.9'), 2) - g(1))
    p("broadcast B.3 C.4 T={C} ns.1", g(mp.mpf('0.1') * mp.mpf('0.55')) - g(mp.mpf('0.1') * mp.mpf('0.15')))
    p("broadcast T={B}", g(mp.mpf('0.1') * mp.mpf('0.45')) - g(mp.mpf('0.1') * mp.mpf('0.15')))
    p("broadcast T={B,C}", g(mp.mpf('0.1') * mp.mpf('0.85')) - g(mp.mpf('0.1') * mp.mpf('0.15')))
    p("broadcast_limit 0.7", mp.log(mp.mpf('1.7') / mp.mpf('0.3'), 2))
    h = chain("loss_then_amp", *(lambda G: (mp.mpf('0.9') / G, G))(1 + mp.mpf('0.1') * mp.mpf('0.1')), mp.mpf('0.1'))
    p("loss_then_amp thermal(0.9,0.1) NS=0.1 h_be", h[0])
    p("loss_then_amp thermal(0.9,0.1) NS=0.1 h_bf", h[1])
    T = mp.mpf('0.9') - mp.mpf('0.1') * mp.mpf('0.1')
    h = chain("amp_then_loss", T, mp.mpf('0.9') / T, mp.mpf('0.1'))
    p("amp_then_loss thermal(0.9,0.1) NS=0.1 h_be", h[0])
    p("amp_then_loss thermal(0.9,0.1) NS=0.1 h_bf", h[1])
    p("gew16(0.75,1,0.1)", gew16(mp.mpf('0.75'), 1, mp.mpf('0.1')))
    p("dsw18(0.9,1,0.1)", dsw18(mp.mpf('0.9'), 1, mp.mpf('0.1')))
    p("dsw18(0.5001,1,0.1)", dsw18(mp.mpf('0.5001'), 1, mp.mpf('0.1')))
    p("gew16(0.5001,1,0.1)", gew16(mp.mpf('0.5001'), 1, mp.mpf('0.1')))
    p("dsw18(0.1,0.1,1)", dsw18(mp.mpf('0.1'), mp.mpf('0.1'), 1))
    p("gew16(0.1,0.1,1)", gew16(mp.mpf('0.1'), mp.mpf('0.1'), 1))
    worst = 0
    for i in range(0, 101, 5):
        ns = mp.mpf(i) / 100
        d = abs(dsw18(mp.mpf('0.1'), mp.mpf('3e-7'), ns) - gew16(mp.mpf('0.1'), mp.mpf('3e-7'), ns))
        worst = max(worst, d)
    p("fig4a max |dsw18-gew16| (coarse grid)", worst)


def broadcast_cascade(etas, subset, ns):
    """H(T E1) - H(E1) for a thermal mode spread over receivers plus Eve's two
    halves by a passive network: V = I + 2 N_S (c c^T (x) I_2) with amplitude
    coefficients c = (sqrt(eta_E/2), sqrt(eta_1), ..., sqrt(eta_m), sqrt(eta_E/2))."""
    etas = [mp.mpf(e) for e in etas]
    eve = 1 - sum(etas)
    c = [mp.sqrt(eve / 2)] + [mp.sqrt(e) for e in etas] + [mp.sqrt(eve / 2)]
    n = len(c)
    V = mp.eye(2 * n)
    for i in range(n):
        for j in range(n):
            V[2 * i, 2 * j] += 2 * mp.mpf(ns) * c[i] * c[j]
            V[2 * i + 1, 2 * j + 1] += 2 * mp.mpf(ns) * c[i] * c[j]
    modes = [i + 1 for i in subset] + [0]
    return entropy(V, modes) - entropy(V, [0])


def broadcast_table():
    for subset, name in [([0], "B"), ([1], "C"), ([0, 1], "B,C")]:
        p(f"broadcast cascade B=.3 C=.4 ns=.1 T={{{name}}}", broadcast_cascade(["0.3", "0.4"], subset, "0.1"))
    p("broadcast cascade B=.2 C=.3 D=.1 ns=2 T={B,D}", broadcast_cascade(["0.2", "0.3", "0.1"], [0, 2], "2"))
    p("closed form B=.2 C=.3 D=.1 ns=2 T={B,D}", g(2 * (1 + mp.mpf('0.3') - mp.mpf('0.3')) / 2) - g(2 * (1 - mp.mpf('0.6')) / 2))


def limit_bound(T, G):
    T, G = mp.mpf(T), mp.mpf(G)
    num = (1 - T**2) * G * mp.log((1 + T) / (1 - T), 2) - (G**2 - 1) * T * mp.log((G + 1) / (G - 1), 2)
    return num / (1 - G**2 * T**2)


def limit_table():
    # removable singularity at G*T = 1, evaluated by approaching it in extended precision
    for G in ["1.5", "2", "4"]:
        G = mp.mpf(G)
        v = limit_bound(1 / G + mp.mpf("1e-30"), G)
        p(f"limit_bound(1/{mp.nstr(G, 3)}, {mp.nstr(G, 3)})", v)
    p("limit_bound(0.5,1.2)", limit_bound("0.5", "1.2"))
    p("limit_bound(0.3,3)", limit_bound("0.3", "3"))


if __name__ == "__main__":
    limit_table()
