# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled scan kernels.

The hot loops are verbatim C (128-bit unsigned fixed point for the
circle state, doubles for the trigonometric residuals).  Each operation
matches _purecore.py in kind and order so both implementations return
bit-identical results; _purecore.py is the readable reference.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

IMPL = "fast"

cdef extern from *:
    """
    #include <math.h>

    typedef unsigned long long sd_u64;
    typedef unsigned __int128 sd_u128;

    #define SD_TWON 0x1p-128
    #define SD_TWOP 0x1p128

    static sd_u128 sd_join(sd_u64 hi, sd_u64 lo)
    {
        return ((sd_u128)hi << 64) | lo;
    }

    static long long sd_scan_f(sd_u64 step_hi, sd_u64 step_lo,
            sd_u64 f_hi, sd_u64 f_lo, int parity,
            long long j_lo, long long j_hi,
            sd_u64 r0_hi, sd_u64 r0_lo, int r0p,
            sd_u64 r1_hi, sd_u64 r1_lo, int r1p,
            double rho2, double c,
            long long *out_j, double *out_f, double *out_d, long long cap)
    {
        sd_u128 step = sd_join(step_hi, step_lo);
        sd_u128 f = sd_join(f_hi, f_lo);
        sd_u128 r0 = sd_join(r0_hi, r0_lo);
        sd_u128 r1 = sd_join(r1_hi, r1_lo);
        int par = parity;
        double absr = fabs(rho2);
        long long cnt = 0;
        long long j;
        for (j = j_lo; j <= j_hi; j++) {
            sd_u128 d0 = f - r0;
            sd_u128 dist0 = (d0 >> 127) ? (sd_u128)0 - d0 : d0;
            double s = (c + absr) / (double)j;
            int full = 1;
            if (s < 0.05) {
                sd_u128 limit = (sd_u128)((0.5 * s + 1e-9) * SD_TWOP);
                if (dist0 > limit) full = 0;
            }
            if (full) {
                int b0 = f < r0;
                int np0 = (int)(d0 >> 127);
                double v0 = np0 ? -((double)((sd_u128)0 - d0) * SD_TWON)
                                : (double)d0 * SD_TWON;
                double s0 = sin(M_PI * v0);
                sd_u128 d1 = f - r1;
                int b1 = f < r1;
                int np1 = (int)(d1 >> 127);
                double v1 = np1 ? -((double)((sd_u128)0 - d1) * SD_TWON)
                                : (double)d1 * SD_TWON;
                double s1 = sin(M_PI * v1);
                double F;
                if ((par ^ r0p ^ b0 ^ np0) & 1) s0 = -s0;
                if ((par ^ r1p ^ b1 ^ np1) & 1) s1 = -s1;
                F = (double)j * s0 + rho2 * s1;
                if (fabs(F) < c) {
                    if (cnt >= cap) return -1;
                    out_j[cnt] = j;
                    out_f[cnt] = F;
                    out_d[cnt] = (double)dist0 * SD_TWON;
                    cnt++;
                }
            }
            {
                sd_u128 nf = f + step;
                if (nf < f) par ^= 1;
                f = nf;
            }
        }
        return cnt;
    }

    static long long sd_scan_crit(sd_u64 step_hi, sd_u64 step_lo, long long step_int,
            sd_u64 f_hi, sd_u64 f_lo, long long i0,
            long long q_lo, long long q_hi, long long y,
            sd_u64 sh_hi, sd_u64 sh_lo, long long sh_int,
            double c_eff, double mu, long long den_off,
            long long *out_q, long long *out_a, double *out_d, double *out_t,
            long long cap)
    {
        sd_u128 step = sd_join(step_hi, step_lo);
        sd_u128 f = sd_join(f_hi, f_lo);
        sd_u128 sh = sd_join(sh_hi, sh_lo);
        long long i = i0;
        long long q = q_lo;
        long long cnt = 0;
        while (q <= q_hi) {
            sd_u128 u = f + sh;
            int c1 = u < f;
            sd_u128 dist = (u >> 127) ? (sd_u128)0 - u : u;
            double thr = c_eff / pow((double)(q + den_off), mu);
            sd_u128 thr_i = (thr >= 1.0) ? ~(sd_u128)0 : (sd_u128)(thr * SD_TWOP);
            if (dist < thr_i) {
                long long n_near = i + sh_int + c1 + (int)(u >> 127);
                long long a = n_near % q;
                if (a < 0) a += q;
                if (cnt >= cap) return -1;
                out_q[cnt] = q;
                out_a[cnt] = a;
                out_d[cnt] = (double)dist * SD_TWON;
                out_t[cnt] = thr;
                cnt++;
            }
            {
                sd_u128 nf = f + step;
                i += step_int + (nf < f);
                f = nf;
            }
            q += y;
        }
        return cnt;
    }

    static double sd_psi_eval(long long q, int kind, double pa, double pb,
                              const double *table)
    {
        if (kind == 0) return pa / pow((double)q, pb);
        if (kind == 1) return pa / ((double)q * pow(log((double)q + 1.0), pb));
        return table[q];
    }

    static double sd_eps_eval(int kind, double B, long long a, long long q)
    {
        double e;
        if (kind == 0) return 0.0;
        e = -(B / (double)q) * cos(4.0 * M_PI * (double)a / (double)q);
        if (kind == 2) e = floor(e * 0x1p48 + 0.5) * 0x1p-48;
        return e;
    }

    static long long sd_scan_move(sd_u64 step_hi, sd_u64 step_lo, long long step_int,
            sd_u64 f_hi, sd_u64 f_lo, long long i0,
            long long q_lo, long long q_hi, long long y,
            int psi_kind, double psi_a, double psi_b, const double *psi_table,
            int gamma_kind, double gamma_x, const double *gamma_table,
            int eps_kind, double eps_B, double c0,
            long long *out_q, long long *out_a, double *out_d, double *out_t,
            long long cap)
    {
        sd_u128 step = sd_join(step_hi, step_lo);
        sd_u128 f = sd_join(f_hi, f_lo);
        long long i = i0;
        long long q = q_lo;
        long long cnt = 0;
        while (q <= q_hi) {
            double psi = sd_psi_eval(q, psi_kind, psi_a, psi_b, psi_table);
            double g = (gamma_kind == 0) ? gamma_x : gamma_table[q];
            double fd = (double)f * SD_TWON;
            long long a0 = (long long)floor((double)i + fd - g + 0.5);
            long long w = (long long)ceil((c0 + 1.0) * psi) + 1;
            long long A;
            for (A = a0 - w; A <= a0 + w; A++) {
                long long a = A % q;
                double eps, delta;
                if (a < 0) a += q;
                eps = sd_eps_eval(eps_kind, eps_B, a, q);
                delta = (double)(i - A) + fd - g - eps;
                if (fabs(delta) < psi) {
                    if (cnt >= cap) return -1;
                    out_q[cnt] = q;
                    out_a[cnt] = a;
                    out_d[cnt] = fabs(delta) / (double)q;
                    out_t[cnt] = psi / (double)q;
                    cnt++;
                }
            }
            {
                sd_u128 nf = f + step;
                i += step_int + (nf < f);
                f = nf;
            }
            q += y;
        }
        return cnt;
    }

    static void sd_sieve_d(long long n, int *d)
    {
        long long i, k;
        for (i = 0; i <= n; i++) d[i] = 0;
        for (i = 1; i <= n; i++)
            for (k = i; k <= n; k += i) d[k]++;
    }

    static void sd_sieve_phi(long long n, long long *phi)
    {
        long long i, p, k;
        for (i = 0; i <= n; i++) phi[i] = i;
        if (n >= 1) phi[1] = 1;
        for (p = 2; p <= n; p++) {
            if (phi[p] == p) {  /* untouched so far => prime */
                for (k = p; k <= n; k += p)
                    phi[k] -= phi[k] / p;
            }
        }
    }

    static void sd_arc_inter(long long na,
            const sd_u64 *alh, const sd_u64 *all_, const sd_u64 *ahh, const sd_u64 *ahl,
            sd_u64 am,
            long long nb,
            const sd_u64 *blh, const sd_u64 *bll, const sd_u64 *bhh, const sd_u64 *bhl,
            sd_u64 bm,
            sd_u64 *tot_hi, sd_u64 *tot_lo)
    {
        sd_u128 tot = 0;
        long long ia = 0, ib = 0;
        while (ia < na && ib < nb) {
            sd_u128 al = sd_join(alh[ia], all_[ia]) * am;
            sd_u128 ah = sd_join(ahh[ia], ahl[ia]) * am;
            sd_u128 bl = sd_join(blh[ib], bll[ib]) * bm;
            sd_u128 bh = sd_join(bhh[ib], bhl[ib]) * bm;
            sd_u128 lo = (al > bl) ? al : bl;
            sd_u128 hi = (ah < bh) ? ah : bh;
            if (lo < hi) tot += hi - lo;
            if (ah < bh) ia++; else ib++;
        }
        *tot_hi = (sd_u64)(tot >> 64);
        *tot_lo = (sd_u64)tot;
    }
    """
    long long sd_scan_f(unsigned long long step_hi, unsigned long long step_lo,
                        unsigned long long f_hi, unsigned long long f_lo, int parity,
                        long long j_lo, long long j_hi,
                        unsigned long long r0_hi, unsigned long long r0_lo, int r0p,
                        unsigned long long r1_hi, unsigned long long r1_lo, int r1p,
                        double rho2, double c,
                        long long *out_j, double *out_f, double *out_d,
                        long long cap) nogil
    long long sd_scan_crit(unsigned long long step_hi, unsigned long long step_lo,
                           long long step_int,
                           unsigned long long f_hi, unsigned long long f_lo, long long i0,
                           long long q_lo, long long q_hi, long long y,
                           unsigned long long sh_hi, unsigned long long sh_lo,
                           long long sh_int,
                           double c_eff, double mu, long long den_off,
                           long long *out_q, long long *out_a,
                           double *out_d, double *out_t, long long cap) nogil
    long long sd_scan_move(unsigned long long step_hi, unsigned long long step_lo,
                           long long step_int,
                           unsigned long long f_hi, unsigned long long f_lo, long long i0,
                           long long q_lo, long long q_hi, long long y,
                           int psi_kind, double psi_a, double psi_b,
                           const double *psi_table,
                           int gamma_kind, double gamma_x, const double *gamma_table,
                           int eps_kind, double eps_B, double c0,
                           long long *out_q, long long *out_a,
                           double *out_d, double *out_t, long long cap) nogil
    void sd_sieve_d(long long n, int *d) nogil
    void sd_sieve_phi(long long n, long long *phi) nogil
    void sd_arc_inter(long long na,
                      const unsigned long long *alh, const unsigned long long *all_,
                      const unsigned long long *ahh, const unsigned long long *ahl,
                      unsigned long long am,
                      long long nb,
                      const unsigned long long *blh, const unsigned long long *bll,
                      const unsigned long long *bhh, const unsigned long long *bhl,
                      unsigned long long bm,
                      unsigned long long *tot_hi, unsigned long long *tot_lo) nogil


_M64 = (1 << 64) - 1


cdef inline long long _ll_ptr_len(object arr):
    return <long long> cnp.PyArray_DIM(<cnp.ndarray> arr, 0)


def scan_f(step, f0, par0, j_lo, j_hi, r0p, r0f, r1p, r1f, double rho2, double c):
    cdef unsigned long long sh_ = (step >> 64) & _M64, sl_ = step & _M64
    cdef unsigned long long fh = (f0 >> 64) & _M64, fl = f0 & _M64
    cdef unsigned long long r0h = (r0f >> 64) & _M64, r0l = r0f & _M64
    cdef unsigned long long r1h = (r1f >> 64) & _M64, r1l = r1f & _M64
    cdef int par = par0, p0 = r0p, p1 = r1p
    cdef long long jl = j_lo, jh = j_hi, cap, n
    cdef long long *pj
    cdef double *pf
    cdef double *pd
    cap = 1024 + (jh - jl) // 4
    while True:
        oj = np.empty(cap, dtype=np.int64)
        of = np.empty(cap, dtype=np.float64)
        od = np.empty(cap, dtype=np.float64)
        pj = <long long *> cnp.PyArray_DATA(<cnp.ndarray> oj)
        pf = <double *> cnp.PyArray_DATA(<cnp.ndarray> of)
        pd = <double *> cnp.PyArray_DATA(<cnp.ndarray> od)
        with nogil:
            n = sd_scan_f(sh_, sl_, fh, fl, par, jl, jh,
                          r0h, r0l, p0, r1h, r1l, p1, rho2, c,
                          pj, pf, pd, cap)
        if n >= 0:
            return oj[:n].copy(), of[:n].copy(), od[:n].copy()
        cap *= 4


def scan_crit(step, step_int, f0, i0, q_lo, q_hi, y, shf, sh_int,
              double c_eff, double mu, den_off):
    cdef unsigned long long sh_ = (step >> 64) & _M64, sl_ = step & _M64
    cdef unsigned long long fh = (f0 >> 64) & _M64, fl = f0 & _M64
    cdef unsigned long long shh = (shf >> 64) & _M64, shl = shf & _M64
    cdef long long si = step_int, i0_ = i0, ql = q_lo, qh = q_hi, y_ = y
    cdef long long shi = sh_int, doff = den_off, cap, n
    cdef long long *pq
    cdef long long *pa
    cdef double *pd
    cdef double *pt
    cap = 1024 + max(0, (qh - ql) // max(1, y)) // 4
    while True:
        oq = np.empty(cap, dtype=np.int64)
        oa = np.empty(cap, dtype=np.int64)
        od = np.empty(cap, dtype=np.float64)
        ot = np.empty(cap, dtype=np.float64)
        pq = <long long *> cnp.PyArray_DATA(<cnp.ndarray> oq)
        pa = <long long *> cnp.PyArray_DATA(<cnp.ndarray> oa)
        pd = <double *> cnp.PyArray_DATA(<cnp.ndarray> od)
        pt = <double *> cnp.PyArray_DATA(<cnp.ndarray> ot)
        with nogil:
            n = sd_scan_crit(sh_, sl_, si, fh, fl, i0_, ql, qh, y_,
                             shh, shl, shi, c_eff, mu, doff,
                             pq, pa, pd, pt, cap)
        if n >= 0:
            return oq[:n].copy(), oa[:n].copy(), od[:n].copy(), ot[:n].copy()
        cap *= 4


def scan_move(step, step_int, f0, i0, q_lo, q_hi, y,
              int psi_kind, double psi_a, double psi_b, psi_table,
              int gamma_kind, double gamma_x, gamma_table,
              int eps_kind, double eps_B, double c0):
    cdef unsigned long long sh_ = (step >> 64) & _M64, sl_ = step & _M64
    cdef unsigned long long fh = (f0 >> 64) & _M64, fl = f0 & _M64
    cdef long long si = step_int, i0_ = i0, ql = q_lo, qh = q_hi, y_ = y
    cdef long long cap, n
    cdef const double *ppsi = NULL
    cdef const double *pgam = NULL
    cdef long long *pq
    cdef long long *pa
    cdef double *pd
    cdef double *pt
    cdef cnp.ndarray psi_arr = None, gam_arr = None
    if psi_table is not None:
        psi_arr = np.ascontiguousarray(psi_table, dtype=np.float64)
        ppsi = <const double *> cnp.PyArray_DATA(psi_arr)
    if gamma_table is not None:
        gam_arr = np.ascontiguousarray(gamma_table, dtype=np.float64)
        pgam = <const double *> cnp.PyArray_DATA(gam_arr)
    cap = 1024 + max(0, (qh - ql) // max(1, y)) // 4
    while True:
        oq = np.empty(cap, dtype=np.int64)
        oa = np.empty(cap, dtype=np.int64)
        od = np.empty(cap, dtype=np.float64)
        ot = np.empty(cap, dtype=np.float64)
        pq = <long long *> cnp.PyArray_DATA(<cnp.ndarray> oq)
        pa = <long long *> cnp.PyArray_DATA(<cnp.ndarray> oa)
        pd = <double *> cnp.PyArray_DATA(<cnp.ndarray> od)
        pt = <double *> cnp.PyArray_DATA(<cnp.ndarray> ot)
        with nogil:
            n = sd_scan_move(sh_, sl_, si, fh, fl, i0_, ql, qh, y_,
                             psi_kind, psi_a, psi_b, ppsi,
                             gamma_kind, gamma_x, pgam,
                             eps_kind, eps_B, c0,
                             pq, pa, pd, pt, cap)
        if n >= 0:
            return oq[:n].copy(), oa[:n].copy(), od[:n].copy(), ot[:n].copy()
        cap *= 4


def sieve_d(n):
    cdef long long n_ = n
    out = np.empty(n_ + 1, dtype=np.int32)
    cdef int *p = <int *> cnp.PyArray_DATA(<cnp.ndarray> out)
    with nogil:
        sd_sieve_d(n_, p)
    return out


def sieve_phi(n):
    cdef long long n_ = n
    out = np.empty(n_ + 1, dtype=np.int64)
    cdef long long *p = <long long *> cnp.PyArray_DATA(<cnp.ndarray> out)
    with nogil:
        sd_sieve_phi(n_, p)
    return out


def arc_inter(alo_hi, alo_lo, ahi_hi, ahi_lo, am, blo_hi, blo_lo, bhi_hi, bhi_lo, bm):
    cdef cnp.ndarray a0 = np.ascontiguousarray(alo_hi, dtype=np.uint64)
    cdef cnp.ndarray a1 = np.ascontiguousarray(alo_lo, dtype=np.uint64)
    cdef cnp.ndarray a2 = np.ascontiguousarray(ahi_hi, dtype=np.uint64)
    cdef cnp.ndarray a3 = np.ascontiguousarray(ahi_lo, dtype=np.uint64)
    cdef cnp.ndarray b0 = np.ascontiguousarray(blo_hi, dtype=np.uint64)
    cdef cnp.ndarray b1 = np.ascontiguousarray(blo_lo, dtype=np.uint64)
    cdef cnp.ndarray b2 = np.ascontiguousarray(bhi_hi, dtype=np.uint64)
    cdef cnp.ndarray b3 = np.ascontiguousarray(bhi_lo, dtype=np.uint64)
    cdef long long na = _ll_ptr_len(a0), nb = _ll_ptr_len(b0)
    cdef unsigned long long am_ = am, bm_ = bm, th = 0, tl = 0
    with nogil:
        sd_arc_inter(na,
                     <const unsigned long long *> cnp.PyArray_DATA(a0),
                     <const unsigned long long *> cnp.PyArray_DATA(a1),
                     <const unsigned long long *> cnp.PyArray_DATA(a2),
                     <const unsigned long long *> cnp.PyArray_DATA(a3),
                     am_, nb,
                     <const unsigned long long *> cnp.PyArray_DATA(b0),
                     <const unsigned long long *> cnp.PyArray_DATA(b1),
                     <const unsigned long long *> cnp.PyArray_DATA(b2),
                     <const unsigned long long *> cnp.PyArray_DATA(b3),
                     bm_, &th, &tl)
    return (int(th) << 64) | int(tl)
