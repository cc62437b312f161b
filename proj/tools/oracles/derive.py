"""Independent reference values frozen into the unit tests.

Everything here is re-derived from the closed-form model with numpy/sympy and
shares no code with the C++ library. Run: python3 tools/oracles/derive.py
"""
import numpy as np
import sympy as sp

np.set_printoptions(precision=17)
mu = 0.3

# conformal map
s = (0.1, 0.05, 0.02)
z = np.exp(1j * np.pi / 3)
zb = np.conj(z)
chi = z + s[0] * zb + s[1] * zb**2 + s[2] * zb**3
print("chi", repr(chi.real), repr(chi.imag))

# shape norm by brute force on 1e6 samples
t = np.linspace(0, 2 * np.pi, 1_000_000, endpoint=False)
zz = np.exp(1j * t)
print("norm(0.1,0.1,0.1)", repr(np.abs(0.1 + 0.2 * zz + 0.3 * zz**2).max()))

# area by shoelace of the boundary image
s = (0.1, 0.2, 0.05)
t = np.linspace(0, 2 * np.pi, 10_000, endpoint=False)
zz = np.exp(1j * t)
w = zz + s[0] * np.conj(zz) + s[1] * np.conj(zz) ** 2 + s[2] * np.conj(zz) ** 3
x, y = w.real, w.imag
print("shoelace", repr(0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))))

# symbolic model
s1, s2, s3 = sp.symbols("s1 s2 s3")
Mr = 2 - 2 * s1
N = sp.Matrix([[-3 * s2 + 2 * s2 * s1 + 3 * s2 * s3, -s1 - 4 * s3 + s1**2 + 3 * s1 * s3, -2 * s2 + 3 * s2 * s1]])
m12 = 2 * s1 * s2 + 6 * s2 * s3
Md = sp.Matrix([
    [4 * s2**2 - 3 * s3 + sp.Rational(9, 2) * s3**2 + 1, m12, 4 * s2**2 - s1 / 2 + sp.Rational(3, 2) * s1 * s3],
    [m12, s1**2 + 6 * s1 * s3 + 9 * s3**2 + sp.Rational(2, 3), m12],
    [4 * s2**2 - s1 / 2 + sp.Rational(3, 2) * s1 * s3, m12, 4 * s2**2 + s1**2 / 2 + sp.Rational(1, 2)],
])
G = Md - N.T * N / Mr
L = -N / Mr
pt = {s1: mu, s2: 0, s3: 0}
print("G(mu,0,0)[1,2]", repr(float(G.subs(pt)[1, 2])))
print("G(mu,0,0)", np.array(G.subs(pt).evalf(), dtype=float).tolist())

# dL density via the ambient curl: dL(v, w) = curl(L) . (v x w)
Lv = [L[0, i] for i in range(3)]
X = [s1, s2, s3]
curl = sp.Matrix([
    sp.diff(Lv[2], s2) - sp.diff(Lv[1], s3),
    sp.diff(Lv[0], s3) - sp.diff(Lv[2], s1),
    sp.diff(Lv[1], s1) - sp.diff(Lv[0], s2),
])
fcurl = sp.lambdify((s1, s2, s3), curl, "numpy")
fG = sp.lambdify((s1, s2, s3), G, "numpy")


def density(p):
    p = np.asarray(p, float)
    n = np.array([p[0], 2 * p[1], 3 * p[2]])
    n /= np.linalg.norm(n)
    a = np.cross(n, [0.3, 0.5, 0.7])
    a /= np.linalg.norm(a)
    b = np.cross(n, a)
    g = np.array(fG(*p), float)
    B = np.stack([a, b], 1)
    det = np.linalg.det(B.T @ g @ B)
    c = np.array(fcurl(*p), float).ravel()
    # (a, b, n) is right handed, so a x b = n
    return c @ np.cross(a, b) / np.sqrt(det)


def shape(phi, theta):
    return np.array([mu * np.sin(phi) * np.cos(theta), mu / np.sqrt(2) * np.sin(phi) * np.sin(theta),
                     mu / np.sqrt(3) * np.cos(phi)])


print("f(mu,0,0)", repr(density([mu, 0, 0])))
print("f(PolarZ 1.0, 0.7)", repr(density(shape(1.0, 0.7))))
print("f(PolarZ 2.2, -2.0)", repr(density(shape(2.2, -2.0))))

# efficiency of the equatorial circle phi = pi/2, theta = 2 pi t, T = 1
tt = np.linspace(0, 1, 20001)
ph = np.pi / 2
th = 2 * np.pi * tt
S = np.stack([mu * np.cos(th), mu / np.sqrt(2) * np.sin(th), 0 * th], 1)
V = np.stack([-mu * np.sin(th), mu / np.sqrt(2) * np.cos(th), 0 * th], 1) * 2 * np.pi
fMr = sp.lambdify((s1, s2, s3), Mr)
fN = sp.lambdify((s1, s2, s3), N)
fMd = sp.lambdify((s1, s2, s3), Md)
rd, en = [], []
for p, v in zip(S, V):
    mr = float(fMr(*p))
    nn = np.array(fN(*p), float).ravel()
    md = np.array(fMd(*p), float)
    r = -nn @ v / mr
    rd.append(r)
    en.append(mr * r * r + 2 * r * (nn @ v) + v @ md @ v)
from scipy.integrate import simpson
vbar = simpson(rd, x=tt)
power = simpson(en, x=tt)
print("equator displacement", repr(vbar))
print("equator efficiency", repr(vbar**2 * float(fMr(mu, 0, 0)) / power))

# g-length of the same circle
fG = sp.lambdify((s1, s2, s3), G)
sp_ = [np.sqrt(v @ np.array(fG(*p), float) @ v) for p, v in zip(S, V)]
print("equator length", repr(simpson(sp_, x=tt)))
