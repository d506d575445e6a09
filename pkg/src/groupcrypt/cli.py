"""Command-line entry point.

Every subcommand prints one JSON document on stdout (or writes it to
``--out``). Exit status: 0 success, 1 verification or protocol rejection,
2 malformed input. All randomness comes from ``--seed``.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import List, Optional

from . import fhe, graphs, oracles, raag
from .errors import GroupCryptError, MalformedSignature, OracleExhausted, OverflowRisk, SizeLimit
from .graphs import SimplicialGraph
from .polycyclic import presentation as pc
from .polycyclic.platforms import UnitriangularMatrix
from .protocols import auth, multilinear, semidirect, sharing, signature, zkp
from .serialize import dumps, str_to_int, unitri_to_json
from .words import format_word, parse_word

EXIT_OK, EXIT_REJECT, EXIT_MALFORMED = 0, 1, 2


class InputError(Exception):
    """Bad user input, reported with the flag it came from."""

    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")
        self.flag = flag


# --- input helpers -----------------------------------------------------------


def _read_text(path: Optional[str], flag: str) -> str:
    if path is None:
        raise InputError(flag, "is required")
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(flag, f"cannot read {path}: {exc.strerror}") from None


def _load_json(path: Optional[str], flag: str):
    text = _read_text(path, flag)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(flag, f"{path} is not valid JSON ({exc.msg})") from None


def _graph(path: Optional[str], flag: str = "--graph") -> SimplicialGraph:
    text = _read_text(path, flag)
    try:
        return SimplicialGraph.from_text(text)
    except (ValueError, IndexError) as exc:
        raise InputError(flag, f"bad graph file {path}: {exc}") from None


def _word(text: Optional[str], n: Optional[int] = None, flag: str = "--word"):
    if text is None:
        raise InputError(flag, "is required")
    try:
        w = parse_word(text)
    except ValueError as exc:
        raise InputError(flag, str(exc)) from None
    if n is not None and any(g >= n for g, _ in w):
        raise InputError(flag, f"uses a generator outside 0..{n - 1}")
    return w


def _int_list(text: Optional[str], flag: str) -> List[int]:
    if text is None:
        raise InputError(flag, "is required")
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise InputError(flag, f"expected comma-separated integers, got {text!r}") from None


def _bits(text: Optional[str], flag: str) -> List[int]:
    if text is None:
        raise InputError(flag, "is required")
    s = text.replace(",", "").replace(" ", "")
    if not s or any(ch not in "01" for ch in s):
        raise InputError(flag, f"expected a string of 0s and 1s, got {text!r}")
    return [int(ch) for ch in s]


def _parse(what: str, flag: str, fn, *args):
    try:
        return fn(*args)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InputError(flag, f"malformed {what}: {exc}") from None


def _emit(args, doc) -> None:
    text = dumps(doc)
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
        sys.stdout.write(dumps({"out": args.out}))
    else:
        sys.stdout.write(text)


def _graph_json(g: SimplicialGraph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}


# --- graph -------------------------------------------------------------------


def cmd_graph(args) -> int:
    if args.action == "join":
        if not args.graph:
            raise InputError("--graph", "give one or more graph files")
        g, blocks = graphs.join(*(_graph(p) for p in args.graph))
        _emit(args, {"graph": _graph_json(g), "blocks": [list(b) for b in blocks], "text": g.to_text()})
    elif args.action == "ham":
        g = _graph(args.graph[0] if args.graph else None)
        try:
            cycle = graphs.hamiltonian_cycle(g)
        except SizeLimit as exc:
            raise InputError("--graph", str(exc)) from None
        _emit(args, {"hamiltonian": cycle is not None, "cycle": list(cycle) if cycle else None})
    else:
        src = _graph(args.graph[0] if args.graph else None)
        dst = _graph(args.target, "--target")
        finder = graphs.find_induced_embedding if args.induced else graphs.find_graph_homomorphism
        try:
            m = finder(src, dst)
        except SizeLimit as exc:
            raise InputError("--graph", str(exc)) from None
        _emit(args, {"map": list(m.image) if m else None})
    return EXIT_OK


# --- raag --------------------------------------------------------------------


def cmd_raag(args) -> int:
    g = _graph(args.graph)
    group = raag.RaagGroup(g)
    if args.action == "decompose":
        factors = graphs.join_decompose(g).factors if g.n else ()
        _emit(args, {"factors": [list(f) for f in factors]})
        return EXIT_OK
    w = _word(args.word, g.n)
    if args.action == "nf":
        _emit(args, {"normal_form": format_word(raag.normal_form(group, w))})
    elif args.action == "trivial":
        _emit(args, {"trivial": raag.is_trivial(group, w)})
    elif args.action == "geodesic":
        nf = raag.normal_form(group, w)
        _emit(args, {"length": len(nf), "geodesic": format_word(nf)})
    else:
        w2 = _word(args.word2, g.n, "--word2")
        try:
            ans = raag.are_conjugate(group, w, w2)
        except SizeLimit as exc:
            raise InputError("--word", str(exc)) from None
        _emit(args, {"conjugate": ans})
    return EXIT_OK


# --- polycyclic --------------------------------------------------------------

BUILTIN_PRESENTATIONS = {
    "s3": pc.symmetric3,
    "d8": pc.dihedral8,
    "z2z": pc.z2_by_z,
}


def _presentation(args) -> pc.PcPresentation:
    if args.presentation:
        return _parse("presentation", "--presentation", pc.PcPresentation.from_text,
                      _read_text(args.presentation, "--presentation"))
    return BUILTIN_PRESENTATIONS[args.builtin]()


def cmd_pc(args) -> int:
    pres = _presentation(args)
    if args.action == "hirsch":
        _emit(args, {"hirsch_length": pc.hirsch_length(pres)})
        return EXIT_OK
    w = _word(args.word, pres.n)
    e = pc.collect(pres, w)
    _emit(args, {"exponents": list(e.exponents), "collected": format_word(e.word())})
    return EXIT_OK


# --- signature ---------------------------------------------------------------


def _message(args) -> bytes:
    if args.message is not None:
        return args.message.encode()
    if args.message_file is not None:
        try:
            return Path(args.message_file).read_bytes()
        except OSError as exc:
            raise InputError("--message-file", f"cannot read {args.message_file}: {exc.strerror}") from None
    raise InputError("--message", "is required (or --message-file)")


def cmd_sig(args) -> int:
    rng = random.Random(args.seed)
    if args.action == "keygen":
        _emit(args, signature.sig_keygen(rng).to_json())
        return EXIT_OK
    key_doc = _load_json(args.key, "--key")
    if args.action == "sign":
        keys = _parse("private key", "--key", signature.SignatureKeys.from_json, key_doc)
        sig = signature.sig_sign(keys, _message(args), rng)
        _emit(args, sig.to_json())
        return EXIT_OK
    pub = _parse("public key", "--key", signature.PublicKey.from_json, key_doc)
    sig_doc = _load_json(args.signature, "--signature")
    try:
        sig = signature.SignatureValue.from_json(pub.g.platform, sig_doc)
        ok = signature.sig_verify(pub.g, pub.x, _message(args), sig)
    except MalformedSignature as exc:
        raise InputError("--signature", str(exc)) from None
    _emit(args, {"valid": ok})
    return EXIT_OK if ok else EXIT_REJECT


# --- key exchanges -----------------------------------------------------------


def cmd_kex(args) -> int:
    rng = random.Random(args.seed)
    if args.platform == "matrix":
        platform = semidirect.matrix_conjugation_platform(rng, args.modulus)
    else:
        platform = semidirect.modular_power_platform(args.modulus, args.generator, args.exponent)
    m = args.m if args.m is not None else rng.randint(1, 2**20)
    n = args.n if args.n is not None else rng.randint(1, 2**20)
    if m < 1:
        raise InputError("--m", "must be positive")
    if n < 1:
        raise InputError("--n", "must be positive")
    res = semidirect.semidirect_kex(platform, m, n, rng)
    key = json.loads(platform.encode(res.alice_key))
    _emit(args, {"platform": platform.name, "agreed": res.agreed, "key": key, "transcript": res.transcript.to_json()})
    return EXIT_OK if res.agreed else EXIT_REJECT


def cmd_nike(args) -> int:
    rng = random.Random(args.seed)
    if args.n < (1 if args.action == "ktt" else 2):
        raise InputError("--n", "is too small for this protocol")
    fn = multilinear.ktt_exchange if args.action == "ktt" else multilinear.ks_nike
    res = fn(args.p, args.n, rng)
    _emit(args, {
        "agreed": res.agreed,
        "closed_form": unitri_to_json(res.closed_form),
        "keys": [unitri_to_json(k) for k in res.keys],
        "transcript": res.transcript.to_json(),
    })
    return EXIT_OK if res.agreed else EXIT_REJECT


# --- secret sharing ----------------------------------------------------------


def cmd_share(args) -> int:
    rng = random.Random(args.seed)
    if args.action == "deal1":
        secret = _bits(args.secret, "--secret")
        bundle = sharing.ss_scheme1_deal(len(secret), args.participants, secret, args.generators, rng)
        _emit(args, bundle.to_json())
    elif args.action == "recover1":
        bundle = _parse("share bundle", "--bundle", sharing.ShareBundle.from_json, _load_json(args.bundle, "--bundle"))
        who = None if args.only is None else _int_list(args.only, "--only")
        if who is not None and any(not 0 <= j < len(bundle.shares) for j in who):
            raise InputError("--only", "participant index out of range")
        bits = sharing.ss_scheme1_recover(bundle, who)
        _emit(args, {"secret": "".join(map(str, bits))})
    elif args.action == "deal2":
        if args.prime <= args.participants:
            raise InputError("--prime", "must exceed the number of participants")
        shares, secret, _ = sharing.ss_scheme2_deal(args.participants, args.prime, rng)
        doc = shares.to_json()
        doc["secret"] = secret
        _emit(args, doc)
    else:
        shares = _parse("join shares", "--bundle", sharing.JoinShares.from_json, _load_json(args.bundle, "--bundle"))
        _emit(args, {"secret": sharing.ss_scheme2_recover(shares)})
    return EXIT_OK


# --- interactive proofs ------------------------------------------------------


def _rounds(args) -> int:
    if args.rounds < 1:
        raise InputError("--rounds", "must be at least 1")
    return args.rounds


def cmd_auth(args) -> int:
    rng = random.Random(args.seed)
    rounds = _rounds(args)
    if args.key:
        keys = _parse("auth key", "--key", auth.AuthKeys.from_json, _load_json(args.key, "--key"))
        if not keys.alpha.is_valid():
            raise InputError("--key", "alpha is not a graph map from gamma1 to gamma2")
    else:
        keys = auth.auth_keygen(rng)
    prover = auth.CheatingAuthProver(keys.public) if args.cheat else auth.HonestAuthProver(keys)
    res = auth.auth_protocol(keys.public, prover, rounds, rng)
    doc = res.to_json()
    doc["public_key"] = keys.public.to_json()
    _emit(args, doc)
    return EXIT_OK if res.accepted else EXIT_REJECT


def cmd_zkp(args) -> int:
    rng = random.Random(args.seed)
    rounds = _rounds(args)
    if args.key:
        state = _parse("prover state", "--key", zkp.ZkpProverState.from_json, _load_json(args.key, "--key"))
    else:
        state = zkp.zkp_keygen(rng, args.vertices)
    prover = zkp.ZkpProver(state, cheat=args.cheat, tamper_nonce=args.tamper)
    res = zkp.zkp_hamiltonicity(state.triple, prover, rounds, rng)
    doc = res.to_json()
    doc["public_graph"] = _graph_json(state.graph)
    _emit(args, doc)
    return EXIT_OK if res.accepted else EXIT_REJECT


# --- fhe ---------------------------------------------------------------------


def _scheme(args) -> fhe.RetractScheme:
    return _parse("key file", "--key", fhe.RetractScheme.from_json, _load_json(args.key, "--key"))


def _ring(args) -> fhe.PublicRing:
    if args.key:
        return _scheme(args).public
    if args.ring:
        return _parse("ring file", "--ring", fhe.PublicRing.from_json, _load_json(args.ring, "--ring"))
    raise InputError("--ring", "is required (or --key)")


def _cts(path: Optional[str], flag: str, ring: Optional[fhe.PublicRing] = None):
    header, cts = _parse("ciphertext file", flag, fhe.ciphertexts_from_json, _load_json(path, flag))
    if ring is not None and (str_to_int(header["N"]) != ring.modulus or header["mix_digest"] != ring.digest):
        raise InputError(flag, "ciphertexts were made under a different key")
    return header, cts


def _values(args) -> List[int]:
    if args.values is not None:
        return _int_list(args.values, "--values")
    if args.csv is not None or args.dataset is not None:
        path = args.csv if args.csv is not None else fhe.bundled_dataset(args.dataset)
        column = args.column
        if column is None:
            column = fhe.BUNDLED_DATASETS.get(args.dataset, 0) if args.dataset else 0
        try:
            return fhe.read_csv_column(path, column)
        except (OSError, ValueError) as exc:
            raise InputError("--csv" if args.csv else "--dataset", str(exc)) from None
    raise InputError("--values", "is required (or --csv / --dataset)")


def cmd_fhe(args) -> int:
    rng = random.Random(args.seed)
    if args.action == "keygen":
        if args.modulus < 2:
            raise InputError("--modulus", "must be at least 2")
        if args.degree < 1:
            raise InputError("--degree", "must be at least 1")
        scheme = fhe.RetractScheme.keygen(rng, args.modulus, args.degree, mix=not args.no_mix)
        doc = scheme.to_json()
        doc["public_ring"] = scheme.public.to_json()
        _emit(args, doc)
        return EXIT_OK
    if args.action == "encrypt":
        scheme = _scheme(args)
        values = _values(args)
        bound = max((abs(v) for v in values), default=0) + 1
        try:
            residues = fhe.encode_db(values, scheme.modulus, bound)
        except OverflowRisk as exc:
            raise InputError("--modulus", str(exc)) from None
        cts = [fhe.encrypt(scheme, r, rng) for r in residues]
        _emit(args, fhe.ciphertexts_to_json(scheme.public, cts, bound))
        return EXIT_OK
    if args.action in ("add", "mul"):
        ring = _ring(args)
        _, a = _cts(args.a, "--a", ring)
        _, b = _cts(args.b, "--b", ring)
        if len(a) != len(b):
            raise InputError("--b", f"has {len(b)} ciphertexts, --a has {len(a)}")
        op = fhe.ct_add if args.action == "add" else fhe.ct_mul
        _emit(args, fhe.ciphertexts_to_json(ring, [op(ring, x, y) for x, y in zip(a, b)]))
        return EXIT_OK
    scheme = _scheme(args)
    if args.action == "decrypt":
        _, cts = _cts(args.ct, "--ct", scheme.public)
        _emit(args, {"values": fhe.decode_db([fhe.decrypt(scheme, c) for c in cts], scheme.modulus)})
        return EXIT_OK
    # mean: from a ciphertext file, or the full pipeline on a column
    if args.ct:
        header, cts = _cts(args.ct, "--ct", scheme.public)
        if "bound" not in header:
            raise InputError("--ct", "file carries no plaintext bound; re-encrypt with this tool")
        try:
            mean = fhe.encrypted_mean(scheme, cts, str_to_int(header["bound"]))
        except (OverflowRisk, ValueError) as exc:
            raise InputError("--ct", str(exc)) from None
        _emit(args, {"mean": str(mean), "count": len(cts), "notice": fhe.SECURITY_NOTICE})
        return EXIT_OK
    values = _values(args)
    if not values:
        raise InputError("--values", "no values to average")
    try:
        mean = fhe.column_mean_pipeline(scheme, values, rng)
    except OverflowRisk as exc:
        raise InputError("--key", str(exc)) from None
    plain = fhe.Fraction(sum(values), len(values))
    _emit(args, {
        "mean": str(mean),
        "plaintext_mean": str(plain),
        "match": mean == plain,
        "count": len(values),
        "notice": fhe.SECURITY_NOTICE,
    })
    return EXIT_OK if mean == plain else EXIT_REJECT


# --- oracles -----------------------------------------------------------------


def cmd_oracle(args) -> int:
    if args.action == "gdlp":
        p = args.p
        xs = [UnitriangularMatrix.elementary(3, p, {ij: 1}) for ij in ((1, 2), (2, 3), (1, 3))]
        a = _int_list(args.exponents, "--exponents")
        if len(a) != 3:
            raise InputError("--exponents", "need three exponents for U_3 generators E12, E23, E13")
        y = xs[0] ** a[0] * xs[1] ** a[1] * xs[2] ** a[2]
        try:
            found = oracles.gdlp_bruteforce(xs, [p] * 3, y, UnitriangularMatrix.identity(3, p))
        except OracleExhausted as exc:
            raise InputError("--p", str(exc)) from None
        _emit(args, {"target": unitri_to_json(y), "exponents": list(found) if found is not None else None})
        return EXIT_OK
    g = _graph(args.graph)
    w = _word(args.word, g.n)
    try:
        if args.action == "word":
            res = "trivial" if oracles.word_oracle(g, w) else "nontrivial"
            _emit(args, {"result": res})
        else:
            w2 = _word(args.word2, g.n, "--word2")
            c = oracles.conjugacy_oracle(g, w, w2, args.max_len)
            _emit(args, {"conjugator": format_word(c) if c is not None else None})
    except OracleExhausted as exc:
        _emit(args, {"result": "exhausted", "detail": str(exc)})
    return EXIT_OK


# --- parser ------------------------------------------------------------------


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("must be an unsigned 64-bit integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="groupcrypt", description="Group-based cryptography toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(parent, name, func, help_text):
        p = parent.add_parser(name, help=help_text)
        p.add_argument("--seed", type=_u64, default=0, help="seed for all randomness")
        p.add_argument("--out", help="write the JSON result here instead of stdout")
        p.set_defaults(func=func, action=name)
        return p

    def group(name, help_text):
        p = sub.add_parser(name, help=help_text)
        return p.add_subparsers(dest="action_name", required=True)

    g = group("graph", "simplicial graph utilities")
    p = add(g, "join", cmd_graph, "join of graphs")
    p.add_argument("--graph", action="append", help="graph file (repeat for each factor)")
    p = add(g, "ham", cmd_graph, "find a Hamiltonian cycle")
    p.add_argument("--graph", action="append")
    p = add(g, "hom", cmd_graph, "find a graph homomorphism")
    p.add_argument("--graph", action="append")
    p.add_argument("--target")
    p.add_argument("--induced", action="store_true", help="require an induced embedding")

    r = group("raag", "right-angled Artin groups")
    for name in ("nf", "trivial", "conj", "geodesic", "decompose"):
        p = add(r, name, cmd_raag, name)
        p.add_argument("--graph")
        p.add_argument("--word")
        if name == "conj":
            p.add_argument("--word2")

    c = group("pc", "polycyclic presentations")
    for name in ("collect", "hirsch"):
        p = add(c, name, cmd_pc, name)
        p.add_argument("--presentation", help="presentation text file")
        p.add_argument("--builtin", choices=sorted(BUILTIN_PRESENTATIONS), default="s3")
        p.add_argument("--word")

    s = group("sig", "signature over Z^2 x| Z")
    add(s, "keygen", cmd_sig, "generate a key pair")
    for name in ("sign", "verify"):
        p = add(s, name, cmd_sig, name)
        p.add_argument("--key")
        p.add_argument("--message")
        p.add_argument("--message-file")
        if name == "verify":
            p.add_argument("--signature")

    k = group("kex", "key exchange")
    p = add(k, "semidirect", cmd_kex, "semidirect-product key exchange")
    p.add_argument("--platform", choices=("matrix", "modpow"), default="matrix")
    p.add_argument("--modulus", type=int, default=100)
    p.add_argument("--generator", type=int, default=2)
    p.add_argument("--exponent", type=int, default=1)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)

    nk = group("nike", "multiparty exchanges in U_m(F_p)")
    for name in ("ktt", "ks"):
        p = add(nk, name, cmd_nike, name)
        p.add_argument("--p", type=int, default=5)
        p.add_argument("--n", type=int, default=2)

    sh = group("share", "secret sharing")
    p = add(sh, "deal1", cmd_share, "word-problem scheme: deal")
    p.add_argument("--secret")
    p.add_argument("--participants", type=int, default=3)
    p.add_argument("--generators", type=int, default=5)
    p = add(sh, "recover1", cmd_share, "word-problem scheme: recover")
    p.add_argument("--bundle")
    p.add_argument("--only", help="comma-separated participant indices to use")
    p = add(sh, "deal2", cmd_share, "join scheme: deal")
    p.add_argument("--participants", type=int, default=3)
    p.add_argument("--prime", type=int, default=7)
    p = add(sh, "recover2", cmd_share, "join scheme: recover")
    p.add_argument("--bundle")

    a = group("auth", "graph-homomorphism authentication")
    p = add(a, "run", cmd_auth, "simulate a run")
    p.add_argument("--rounds", type=int, default=64)
    p.add_argument("--key")
    p.add_argument("--cheat", action="store_true", help="prover without the private map")

    z = group("zkp", "Hamiltonicity proof of knowledge")
    p = add(z, "run", cmd_zkp, "simulate a run")
    p.add_argument("--rounds", type=int, default=128)
    p.add_argument("--key")
    p.add_argument("--vertices", type=int, default=6)
    p.add_argument("--cheat", nargs="?", const="noncycle", choices=zkp.CHEAT_MODES)
    p.add_argument("--tamper", action="store_true", help="corrupt one opening nonce")

    f = group("fhe", "toy retract homomorphic encryption (NOT SECURE)")
    p = add(f, "keygen", cmd_fhe, "generate a key")
    p.add_argument("--modulus", type=int, default=1000003)
    p.add_argument("--degree", type=int, default=fhe.DEFAULT_DEGREE)
    p.add_argument("--no-mix", action="store_true")
    for name in ("encrypt", "mean"):
        p = add(f, name, cmd_fhe, name)
        p.add_argument("--key")
        p.add_argument("--values")
        p.add_argument("--csv")
        p.add_argument("--dataset", choices=sorted(fhe.BUNDLED_DATASETS))
        p.add_argument("--column")
        if name == "mean":
            p.add_argument("--ct")
    for name in ("add", "mul"):
        p = add(f, name, cmd_fhe, name)
        p.add_argument("--key")
        p.add_argument("--ring")
        p.add_argument("--a")
        p.add_argument("--b")
    p = add(f, "decrypt", cmd_fhe, "decrypt")
    p.add_argument("--key")
    p.add_argument("--ct")

    o = group("oracle", "brute-force reference oracles")
    for name in ("word", "conj"):
        p = add(o, name, cmd_oracle, name)
        p.add_argument("--graph")
        p.add_argument("--word")
        if name == "conj":
            p.add_argument("--word2")
            p.add_argument("--max-len", type=int, default=3)
    p = add(o, "gdlp", cmd_oracle, "exponents over U_3(F_p)")
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--exponents")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"groupcrypt {args.command} {args.action}: error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (GroupCryptError, ValueError) as exc:
        print(f"groupcrypt {args.command} {args.action}: error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
