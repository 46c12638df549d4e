import itertools

import pytest

import oracles
from conftest import F2, F3, F5, F7
from coset2pc.code import LinearCode, simplex_code
from coset2pc.errors import DimensionMismatchError, NotMinimalError, ProtocolAbort, ProtocolError
from coset2pc.field import SeededRng
from coset2pc.matrix import FieldVector, Matrix
from coset2pc.protocol import (
    ReceiverParty,
    SenderParty,
    augment_euclidean_input,
    build_request,
    compute_selector,
    custom_spec,
    hamming_spec,
    ideal_ot,
    make_ot,
    run_protocol,
    scalar_product_spec,
    squared_euclidean_spec,
)
from coset2pc.protocol import wire
from coset2pc.protocol.wire import Frame, MsgType


def vec(f, s):
    return FieldVector.from_digits(f, s)


def expected(spec, x):
    q = spec.field.q
    return (sum(c * v for c, v in zip(spec.coeffs.values, x.values)) + spec.post_add.value) % q


# function families


def test_scalar_product_spec():
    s = scalar_product_spec(vec(F2, "110"))
    assert s.coeffs == vec(F2, "110") and s.post_add.value == 0 and s.label == "scalar_product"
    assert scalar_product_spec(vec(F3, "21")).coeffs == vec(F3, "21")
    with pytest.raises(ValueError):
        scalar_product_spec(vec(F2, "000"))


def test_squared_euclidean_example():
    x, y = vec(F7, "12"), vec(F7, "23")
    s = squared_euclidean_spec(y)
    assert s.coeffs.values == (3, 1, 1)  # -4, -6, 1 mod 7
    assert s.post_add.value == 6
    xa = augment_euclidean_input(x)
    assert xa.values == (1, 2, 5)
    raw = sum(c * v for c, v in zip(s.coeffs.values, xa.values)) % 7
    assert raw == 3
    assert expected(s, xa) == 2 == ((1 - 2) ** 2 + (2 - 3) ** 2) % 7


def test_squared_euclidean_zero_y_and_self():
    s = squared_euclidean_spec(vec(F7, "00"))
    assert s.coeffs.values == (0, 0, 1)
    x = vec(F7, "34")
    assert expected(s, augment_euclidean_input(x)) == (9 + 16) % 7
    assert expected(squared_euclidean_spec(x), augment_euclidean_input(x)) == 0


def test_hamming_spec():
    s = hamming_spec(vec(F5, "110"))
    assert s.coeffs.values == (4, 4, 1) and s.post_add.value == 2
    assert expected(s, vec(F5, "101")) == 2
    assert expected(s, vec(F5, "110")) == 0
    with pytest.raises(ValueError):
        hamming_spec(vec(F3, "110"))
    assert hamming_spec(vec(F3, "110"), allow_wraparound=True).coeffs.values == (2, 2, 1)
    with pytest.raises(ValueError):
        hamming_spec(vec(F5, "120"))


def test_spec_label_checked():
    with pytest.raises(ValueError):
        custom_spec(vec(F3, "00"))
    with pytest.raises(ValueError):
        type(custom_spec(vec(F3, "10")))(vec(F3, "10"), F3(0), "cubic")


# selector and padding


def test_selector_examples(simplex7, code9):
    assert compute_selector(simplex7, scalar_product_spec(vec(F2, "110"))) == vec(F2, "0111100")
    v = compute_selector(code9, custom_spec(vec(F2, "0110")))
    assert sum(1 for a in v.values if a) == 6


def test_selector_unit_vectors(code20):
    for i in range(code20.r):
        v = compute_selector(code20, custom_spec(FieldVector.unit(F3, code20.r, i)))
        assert v == code20.H.row(i)


def test_selector_dimension_mismatch(simplex7):
    with pytest.raises(DimensionMismatchError):
        compute_selector(simplex7, custom_spec(vec(F2, "1000")))


def test_request_no_dummies():
    req = build_request(vec(F2, "0111100"), 4, SeededRng(3))
    assert sorted(req) == [2, 3, 4, 5]


def test_request_padding_repeats_support(code9):
    rng = SeededRng(5)
    for coeffs in ("1000", "0011", "0110"):
        v = compute_selector(code9, custom_spec(vec(F2, coeffs)))
        req = build_request(v, code9.w_max, rng)
        assert len(req) == 6
        assert set(req) == {i + 1 for i, a in enumerate(v.values) if a}


def test_request_order_is_shuffled():
    v = vec(F2, "1111111")
    orders = {tuple(build_request(v, 7, SeededRng(s))) for s in range(20)}
    assert len(orders) > 1


def test_request_rejects_overweight():
    with pytest.raises(ValueError):
        build_request(vec(F2, "1111"), 3, SeededRng(0))
    with pytest.raises(ValueError):
        build_request(vec(F2, "0000"), 3, SeededRng(0))


# ideal OT


def test_ideal_ot_example():
    res = ideal_ot(vec(F2, "0000100"), [2, 3, 4, 5])
    assert [e.value for e in res.delivered] == [0, 0, 0, 1]
    assert res.sender_fragment == 4
    assert [(i, e.value) for i, e in res.receiver_fragment] == [(2, 0), (3, 0), (4, 0), (5, 1)]


def test_ideal_ot_repeat_and_range():
    res = ideal_ot(vec(F3, "0120"), [3, 3])
    assert [e.value for e in res.delivered] == [2, 2] and res.sender_fragment == 2
    for bad in (0, 5):
        with pytest.raises(ProtocolError):
            ideal_ot(vec(F3, "0120"), [bad])


def test_sequential_ot_single_index():
    ot = make_ot("sequential")
    assert ot.transfer(vec(F2, "01"), [2]).sender_fragment == 1
    with pytest.raises(ProtocolError):
        ot.transfer(vec(F2, "01"), [1, 2])
    with pytest.raises(ValueError):
        make_ot("telepathic")


# end-to-end runs


def test_worked_example_run(simplex7):
    res = run_protocol(
        vec(F2, "101"), scalar_product_spec(vec(F2, "110")), simplex7, seeds=1, forced_encoding=vec(F2, "0000100")
    )
    rx = res.receiver
    assert rx.V == vec(F2, "0111100")
    assert sorted(rx.request_indices) == [2, 3, 4, 5]
    assert rx.z_bar == vec(F2, "0001")
    assert res.p2_output.value == 1
    assert res.p1_output is None


def test_exhaustive_simplex(simplex7):
    for xs in itertools.product(range(2), repeat=3):
        for ys in itertools.product(range(2), repeat=3):
            if not any(ys):
                continue
            x, y = FieldVector(F2, xs), FieldVector(F2, ys)
            res = run_protocol(x, scalar_product_spec(y), simplex7, seeds=sum(xs) * 8 + sum(ys))
            assert res.p2_output.value == sum(a * b for a, b in zip(xs, ys)) % 2


@pytest.mark.parametrize("name", ["simplex7", "code9", "code20", "simplex13"])
def test_projection(name, request):
    code = request.getfixturevalue(name)
    rng = SeededRng(11)
    for trial in range(10):
        x = FieldVector(code.field, rng.integers(code.q, size=code.r).tolist())
        res = run_protocol(x, custom_spec(FieldVector.unit(code.field, code.r, 0)), code, seeds=trial)
        assert res.p2_output.value == x.values[0]


@pytest.mark.parametrize("name", ["simplex7", "code9", "code20", "simplex13"])
def test_random_custom_functions(name, request):
    code = request.getfixturevalue(name)
    rng = SeededRng(99)
    for trial in range(60):
        x = FieldVector(code.field, rng.integers(code.q, size=code.r).tolist())
        coeffs = FieldVector(code.field, rng.integers(code.q, size=code.r).tolist())
        if coeffs.is_zero():
            continue
        spec = custom_spec(coeffs, int(rng.integers(code.q)))
        res = run_protocol(x, spec, code, seeds=trial)
        assert res.p2_output.value == expected(spec, x)


def test_euclidean_run():
    code = simplex_code(3, F7)
    x, y = vec(F7, "12"), vec(F7, "23")
    res = run_protocol(augment_euclidean_input(x), squared_euclidean_spec(y), code, seeds=4)
    assert res.p2_output.value == 2


def test_hamming_run():
    code = simplex_code(3, F5)
    res = run_protocol(vec(F5, "101"), hamming_spec(vec(F5, "110")), code, seeds=2)
    assert res.p2_output.value == 2


def test_reveal(simplex7):
    res = run_protocol(vec(F2, "111"), scalar_product_spec(vec(F2, "110")), simplex7, seeds=3, reveal=True)
    assert res.p1_output.value == res.p2_output.value == 0
    assert res.p1_view.output == 0
    types = [bytes.fromhex(f)[0] for _, f in res.p2_transcript.frames()]
    assert types[-1] == MsgType.RESULT_REVEAL


def test_sequential_mode_matches(code9):
    x, y = vec(F2, "1011"), vec(F2, "0110")
    a = run_protocol(x, custom_spec(y), code9, seeds=7)
    b = run_protocol(x, custom_spec(y), code9, ot=make_ot("sequential"), seeds=7)
    assert a.p2_output == b.p2_output
    requests = [f for d, f in b.p2_transcript.frames() if d == "send" and bytes.fromhex(f)[0] == MsgType.OT_REQUEST]
    assert len(requests) == code9.w_max
    assert [m["ot_count"] for m in b.p1_view.messages if "ot_count" in m] == [1] * code9.w_max


def test_determinism(code20):
    x = FieldVector(F3, [1, 2, 0, 1])
    spec = custom_spec(FieldVector(F3, [2, 0, 1, 1]))
    a = run_protocol(x, spec, code20, seeds=123)
    b = run_protocol(x, spec, code20, seeds=123)
    assert a.p1_transcript.records == b.p1_transcript.records
    assert a.p2_transcript.records == b.p2_transcript.records
    assert a.p1_view.to_bytes() == b.p1_view.to_bytes()
    c = run_protocol(x, spec, code20, seeds=124)
    assert c.p2_output == a.p2_output
    assert c.p2_transcript.records != a.p2_transcript.records


def test_p1_view_holds_only_count(simplex7):
    res = run_protocol(vec(F2, "101"), scalar_product_spec(vec(F2, "110")), simplex7, seeds=1)
    kinds = [Frame.decode(bytes.fromhex(m["frame"])).type for m in res.p1_view.messages if "frame" in m]
    assert MsgType.OT_REQUEST not in kinds
    assert {"ot_count": 4} in res.p1_view.messages


def test_receiver_privacy_small(code9):
    x = vec(F2, "1101")
    views = set()
    for ys in itertools.product(range(2), repeat=4):
        if any(ys):
            res = run_protocol(x, custom_spec(FieldVector(F2, ys)), code9, seeds=(5, int(sum(ys))))
            views.add(res.p1_view.to_bytes())
    assert len(views) == 1


def test_revealed_set_is_support(code9):
    for ys in itertools.product(range(2), repeat=4):
        if not any(ys):
            continue
        res = run_protocol(vec(F2, "0110"), custom_spec(FieldVector(F2, ys)), code9, seeds=9)
        assert set(res.receiver.received) == set(res.receiver.support_indices)


def test_sender_posterior_uniform(simplex7):
    # P2's knowledge after the run, checked against a brute-force posterior
    x, y = vec(F2, "101"), vec(F2, "110")
    res = run_protocol(x, scalar_product_spec(y), simplex7, seeds=6)
    revealed = {i: v.value for i, v in res.receiver.received.items()}
    post = oracles.posterior(simplex7.H.rows, 2, revealed)
    assert len(post) == 4 and len(set(post.values())) == 1
    assert all(sum(a * b for a, b in zip(m, y.values)) % 2 == 1 for m in post)


def test_refuses_non_minimal():
    code = LinearCode(F2, Matrix(F2, [[1, 0, 1], [0, 1, 1]]))
    code_bad = LinearCode(F2, Matrix.identity(F2, 2))
    run_protocol(vec(F2, "10"), scalar_product_spec(vec(F2, "11")), code, seeds=0)
    with pytest.raises(NotMinimalError) as info:
        run_protocol(vec(F2, "10"), scalar_product_spec(vec(F2, "11")), code_bad, seeds=0)
    assert info.value.witness is not None
    res = run_protocol(vec(F2, "10"), scalar_product_spec(vec(F2, "11")), code_bad, seeds=0, unsafe=True)
    assert res.p2_output.value == 1


def test_digest_mismatch_aborts(code9):
    permuted = LinearCode(F2, code9.H.columns_subset([1, 0] + list(range(2, 9))))
    sender = SenderParty(code9, vec(F2, "1011"), 1, make_ot("batched"))
    receiver = ReceiverParty(permuted, custom_spec(vec(F2, "1000")), 2)
    (hello,) = sender.start()
    with pytest.raises(ProtocolAbort) as info:
        receiver.receive(hello)
    frame = Frame.decode(info.value.frame)
    assert frame.type is MsgType.ABORT and b"mismatch" in frame.payload
    with pytest.raises(ProtocolAbort):
        sender.receive(info.value.frame)
    assert sender.done and receiver.done


def test_unexpected_frame_is_error(simplex7):
    sender = SenderParty(simplex7, vec(F2, "101"), 1, make_ot("batched"))
    sender.start()
    with pytest.raises(ProtocolError):
        sender.receive(wire.ot_request([1, 2, 3, 4]))


def test_over_request_is_error(simplex7):
    sender = SenderParty(simplex7, vec(F2, "101"), 1, make_ot("sequential"))
    sender.start()
    sender.receive(wire.hello(simplex7))
    for i in range(4):
        sender.receive(wire.ot_request([i + 1]))
    with pytest.raises(ProtocolError):
        sender.receive(wire.ot_request([1]))


def test_forced_encoding_checked(simplex7):
    with pytest.raises(ValueError):
        SenderParty(simplex7, vec(F2, "101"), 1, make_ot("batched"), forced_encoding=vec(F2, "0000000"))


def test_input_length_checked(simplex7):
    with pytest.raises(DimensionMismatchError):
        SenderParty(simplex7, vec(F2, "1011"), 1, make_ot("batched"))
