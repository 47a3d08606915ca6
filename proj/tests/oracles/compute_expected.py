"""High-precision reference values frozen into the C++ unit tests.

Every value here is computed with mpmath from the defining formulas or by
an independent search (root finding on first-order conditions, explicit
joint-distribution enumeration). Nothing in this file calls the C++ code.

    python3 tests/oracles/compute_expected.py
"""
import mpmath as mp

mp.mp.dps = 40


def h(t):
    t = mp.mpf(t)
    if t == 0 or t == 1:
        return mp.mpf(0)
    return -t * mp.log(t, 2) - (1 - t) * mp.log(1 - t, 2)


def hinv(y):
    y = mp.mpf(y)
    if y <= 0:
        return mp.mpf(0)
    if y >= 1:
        return mp.mpf("0.5")
    return mp.findroot(lambda t: h(t) - y, (mp.mpf("1e-30"), mp.mpf("0.5")), solver="bisect")


def conv(a, b):
    return a * (1 - b) + b * (1 - a)


def kl(q, p):
    return sum(qi * mp.log(qi / pi, 2) for qi, pi in zip(q, p) if qi > 0)


def dsbs(p):
    p = mp.mpf(p)
    return [(1 - p) / 2, p / 2, p / 2, (1 - p) / 2]


def mi_triple(pxy, chan, base=2):
    """Mutual informations by enumerating the joint Q(w,x,y)."""
    wc = len(chan[0])
    q = [[pxy[xy] * chan[xy][w] for xy in range(4)] for w in range(wc)]
    qw = [sum(row) for row in q]
    px = [pxy[0] + pxy[1], pxy[2] + pxy[3]]
    py = [pxy[0] + pxy[2], pxy[1] + pxy[3]]
    lg = (lambda v: mp.log(v, 2)) if base == 2 else mp.log
    a = b = g = mp.mpf(0)
    for w in range(wc):
        if qw[w] == 0:
            continue
        for x in range(2):
            qwx = q[w][2 * x] + q[w][2 * x + 1]
            if qwx > 0:
                a += qwx * lg(qwx / (qw[w] * px[x]))
        for y in range(2):
            qwy = q[w][y] + q[w][2 + y]
            if qwy > 0:
                b += qwy * lg(qwy / (qw[w] * py[y]))
        for xy in range(4):
            if q[w][xy] > 0:
                g += q[w][xy] * lg(q[w][xy] / (qw[w] * pxy[xy]))
    return a, b, g


def upsilon_d1(p, a, b):
    return 1 - (1 - p) * h((a + b - p) / (2 * (1 - p))) - p * h((a - b + p) / (2 * p))


def scan_qopt(a, b, p):
    """Argmin of D(Q||DSBS(p)) over couplings via root of the derivative."""
    a, b, p = mp.mpf(a), mp.mpf(b), mp.mpf(p)
    P = dsbs(p)
    lo, hi = max(mp.mpf(0), a + b - 1), min(a, b)

    def d(q):
        return mp.log((1 + q - a - b) * q / ((b - q) * (a - q))) - mp.log(P[0] * P[3] / (P[1] * P[2]))

    eps = mp.mpf("1e-35")
    return mp.findroot(d, (lo + eps, hi - eps), solver="bisect")


def show(name, v):
    print(f"{name:55s} {mp.nstr(v, 17)}")


p = mp.mpf("0.05")
show("h(0.05)", h(p))
show("hinv(0.5)", hinv("0.5"))
show("kl(point,(dsbs .05))", kl([1, 0, 0, 0], dsbs(p)))
show("1+h(0.05)", 1 + h(p))
show("1-h(0.1)", 1 - h("0.1"))
show("I0 boundary at alpha=.3", mp.mpf("0.3") - mp.mpf("0.3") * h(p / mp.mpf("0.3")))
show("h(p)+boundary", h(p) + mp.mpf("0.3") - mp.mpf("0.3") * h(p / mp.mpf("0.3")))
show("1-h(0.1)-0.2", 1 - h("0.1") - mp.mpf("0.2"))

# Upsilon*(0.331004..,0.331004..) via the defining rate-distortion formula
al = 1 - h("0.1") - mp.mpf("0.2")
a = hinv(1 - al)
show("lossy a", a)
show("lossy a*b vs p", conv(a, a))
show("lossy a*p vs b", conv(a, p))
show("lossy upsilon (D1)", upsilon_d1(p, a, a))

# Upsilon*(0.3,0.2)
a, b = hinv("0.7"), hinv("0.8")
show("a(0.3)", a)
show("b(0.2)", b)
show("a*b", conv(a, b))
show("a*p", conv(a, p))
show("b*p", conv(b, p))
show("upsilon*(.3,.2) D1 clause", upsilon_d1(p, a, b))

# coupled construction value at a=b=0.2
show("coupled gamma a=b=.2", 1 - mp.mpf("0.95") * h(mp.mpf("0.35") / mp.mpf("1.9")) - mp.mpf("0.05"))

# side construction beta at a=0.1
show("1-h(0.14)", 1 - h("0.14"))

# cascade at a=b=sqrt-root of a*a=p
aa = mp.findroot(lambda t: conv(t, t) - p, (mp.mpf(0), mp.mpf("0.5")), solver="bisect")
show("a with a*a=p", aa)
show("cascade gamma 1+h(p)-2h(a)", 1 + h(p) - 2 * h(aa))

# Gaussian
rho = mp.mpf("0.9")
al = be = mp.mpf("0.5")
rh = (rho - mp.sqrt((1 - mp.e ** (-2 * al)) * (1 - mp.e ** (-2 * be)))) / mp.e ** (-al - be)
show("rho_hat(.9,.5,.5)", rh)
show("cos*cos", mp.sqrt((1 - mp.e ** (-1)) ** 2))
show("upsilon_g(.9,.5,.5)", al + be - mp.log((1 - rh ** 2) / (1 - rho ** 2)) / 2)
show("psi_lower_g(.9,1,1)", 2 / (1 + rho))
show("phi_q(1) q=-1", 2 / (2 - rho ** 2))

# q_opt at a=b=.2, p=.05 via derivative root
show("scan qopt(.2,.2,.05)", scan_qopt("0.2", "0.2", "0.05"))
show("scan qopt(.1,.3,.05)", scan_qopt("0.1", "0.3", "0.05"))
show("scan qopt(.5,.5,.05)", scan_qopt("0.5", "0.5", "0.05"))

# phi_lower(0.3,0.2) at p=.05 via scan
a, b = hinv("0.7"), hinv("0.8")
q = scan_qopt(a, b, p)
Q = [1 + q - a - b, b - q, a - q, q]
show("phi_lower(.3,.2) scan", kl(Q, dsbs(p)))

# mutual informations through explicit enumeration of the coupled construction
a = b = mp.mpf("0.2")
P = dsbs(p)
c0 = [1 - (a + b + p) / 2, (-a + b + p) / 2, (a - b + p) / 2, (a + b - p) / 2]
c1 = [(a + b - p) / 2, (a - b + p) / 2, (-a + b + p) / 2, 1 - (a + b + p) / 2]
chan = [[c0[xy] / 2 / P[xy], c1[xy] / 2 / P[xy]] for xy in range(4)]
show("coupled triple alpha", mi_triple(P, chan)[0])
show("coupled triple gamma", mi_triple(P, chan)[2])

# conv phi lower on hat-D4 at (0.6, 0.2), p=.05
al, be = mp.mpf("0.6"), mp.mpf("0.2")
t = hinv(1 - be / al)
show("conv phi D4 (0.6,0.2)", al + al * kl([1 - t, t], [1 - p, p]))
show("(1-2p)^2", (1 - 2 * p) ** 2)
show("1-h(p)", 1 - h(p))
