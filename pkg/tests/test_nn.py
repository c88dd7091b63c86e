# tests/test_nn.py
# Tests the layer kernels, hand-derived gradients, SGD update and checkpoints in
# pidispatch.nn.

# Importing relevant libraries
import numpy as np
import pytest

from pidispatch.exceptions import ParseError, ShapeError, StateError
from pidispatch.losses import mse_loss
from pidispatch.nn import (CnnModel, ConvLayer, DenseLayer, FlattenLayer, MaxPoolLayer, ReluLayer, load_model,
                           make_cnn, relu, save_model, sgd_step)
from tests.helpers import central_difference, relative_error

SEEDS = range(20)


def conv(weights, bias):
    weights = np.asarray(weights, dtype=float)
    layer = ConvLayer(weights.shape[1], weights.shape[0], weights.shape[2])
    layer.weights[...] = weights
    layer.biases[...] = bias
    return layer


def dense(weights, bias):
    weights = np.asarray(weights, dtype=float)
    layer = DenseLayer(weights.shape[1], weights.shape[0])
    layer.weights[...] = weights
    layer.biases[...] = bias
    return layer


# Valid cross-correlation examples.
def test_conv_examples():
    x = np.array([[[1.0, 2.0, 3.0, 4.0]]])
    assert conv([[[1.0, 0.0, -1.0]]], [0.0]).forward(x)[0, 0] == pytest.approx([-2.0, -2.0])
    assert conv([[[1.0]]], [0.0]).forward(x)[0, 0] == pytest.approx([1.0, 2.0, 3.0, 4.0])
    assert conv([[[0.0, 0.0]]], [2.5]).forward(x)[0, 0] == pytest.approx([2.5, 2.5, 2.5])


# A kernel longer than the input is a shape error.
def test_conv_rejects_short_input():
    with pytest.raises(ShapeError):
        conv([[[1.0, 1.0, 1.0]]], [0.0]).forward(np.ones((1, 1, 2)))


# ReLU keeps positives and is idempotent.
def test_relu_examples():
    assert list(relu(np.array([-1.0, 0.0, 2.0]))) == [0.0, 0.0, 2.0]
    x = np.random.default_rng(1).normal(size=10)
    assert np.array_equal(relu(relu(x)), relu(x))
    assert np.array_equal(relu(np.abs(x) + 1), np.abs(x) + 1)


# Max-pooling examples, including the first-maximum tie-break.
def test_maxpool_examples():
    assert MaxPoolLayer(2, 2).forward(np.array([[[1.0, 3.0, 2.0, 5.0]]]))[0, 0] == pytest.approx([3.0, 5.0])
    assert MaxPoolLayer(2, 2).forward(np.full((1, 1, 6), 7.0))[0, 0] == pytest.approx([7.0, 7.0, 7.0])
    pool = MaxPoolLayer(2, 1)
    assert pool.forward(np.array([[[4.0, 4.0, 1.0]]]))[0, 0] == pytest.approx([4.0, 4.0])
    dx, _ = pool.backward(np.array([[[1.0, 0.0]]]))
    assert dx[0, 0] == pytest.approx([1.0, 0.0, 0.0])


# Dense layer examples.
def test_dense_examples():
    x = np.array([[3.0, 4.0]])
    assert dense([[1.0, 0.0], [0.0, 1.0]], [0.0, 0.0]).forward(x)[0] == pytest.approx([3.0, 4.0])
    assert dense([[0.0, 0.0]], [1.5]).forward(x)[0] == pytest.approx([1.5])
    assert dense([[1.0, 2.0]], [0.5]).forward(x)[0] == pytest.approx([11.5])


@pytest.mark.parametrize('length, kernel, window, stride', [(11, 3, 2, 2), (9, 2, 3, 1), (7, 1, 2, 3)])
# Output lengths follow in - kernel + 1 and floor((in - window) / stride) + 1.
def test_shape_algebra(length, kernel, window, stride):
    x = np.zeros((2, 1, length))
    out = ConvLayer(1, 4, kernel).forward(x)
    assert out.shape == (2, 4, length - kernel + 1)
    pooled = MaxPoolLayer(window, stride).forward(out)
    assert pooled.shape[2] == (length - kernel + 1 - window) // stride + 1


# The default architecture maps 11 features to 5 outputs deterministically.
def test_default_cnn_forward():
    model = make_cnn(seed=0)
    x = np.random.default_rng(0).uniform(size=(4, 11))
    out = model.forward(x)
    assert out.shape == (4, 5)
    assert np.array_equal(model.forward(x), out)
    assert np.array_equal(model.predict(x), out)
    with pytest.raises(ShapeError):
        model.forward(np.zeros((1, 10)))


# A zero-initialised final dense layer outputs its bias.
def test_zero_final_layer_outputs_bias():
    model = make_cnn(seed=3)
    last = model.layers[-1]
    last.weights[...] = 0.0
    last.biases[...] = np.arange(5.0)
    assert model.predict(np.ones((2, 11))) == pytest.approx(np.tile(np.arange(5.0), (2, 1)))


# Incompatible adjacent layers are refused when the stack is built.
def test_stack_shape_check():
    with pytest.raises(ShapeError):
        CnnModel([ConvLayer(1, 4, 3), FlattenLayer(), DenseLayer(10, 5)], n_inputs=11)


# backward() before any forward() is a state error.
def test_backward_needs_forward():
    with pytest.raises(StateError):
        make_cnn(seed=0).backward(np.ones((1, 5)))


# A zero loss gradient yields zero parameter gradients.
def test_zero_gradient_propagates_zero():
    model = make_cnn(seed=2)
    model.forward(np.random.default_rng(2).uniform(size=(3, 11)))
    for grads in model.backward(np.zeros((3, 5))):
        for array in grads.values():
            assert not array.any()


# ReLU on all-negative pre-activations blocks the gradient.
def test_relu_blocks_negative():
    layer = ReluLayer()
    layer.forward(-np.ones((2, 3, 4)))
    dx, _ = layer.backward(np.ones((2, 3, 4)))
    assert not dx.any()


# SGD examples: epsilon 0 leaves parameters alone; w=1, grad=2, epsilon=0.1 gives 0.8.
def test_sgd_step_examples():
    model = CnnModel([dense([[1.0]], [0.0])], n_inputs=1)
    sgd_step(model, [{'weights': np.array([[2.0]]), 'biases': np.array([0.0])}], 0.0)
    assert model.layers[0].weights[0, 0] == 1.0
    sgd_step(model, [{'weights': np.array([[2.0]]), 'biases': np.array([0.0])}], 0.1)
    assert model.layers[0].weights[0, 0] == pytest.approx(0.8)
    with pytest.raises(ShapeError):
        sgd_step(model, [{'weights': np.zeros((2, 2)), 'biases': np.zeros(1)}], 0.1)


# A single dense layer fitted by full-batch SGD reaches the least-squares solution.
def test_sgd_fits_linear_regression():
    rng = np.random.default_rng(5)
    x = np.linspace(-1.0, 1.0, 41)[:, None]
    y = 3.0 * x + 2.0 + rng.normal(0.0, 0.05, x.shape)
    model = CnnModel([dense([[0.0]], [0.0])], learning_rate=0.5, n_inputs=1)
    initial, _ = mse_loss(model.forward(x), y)
    for _ in range(100):
        _, grad = mse_loss(model.forward(x), y)
        sgd_step(model, model.backward(grad))
    final, _ = mse_loss(model.predict(x), y)
    assert final < 0.01 * initial
    design = np.column_stack([x[:, 0], np.ones(len(x))])
    slope, intercept = np.linalg.lstsq(design, y[:, 0], rcond=None)[0]
    assert model.layers[0].weights[0, 0] == pytest.approx(slope, abs=1e-6)
    assert model.layers[0].biases[0] == pytest.approx(intercept, abs=1e-6)


def _layer_check(layer, x, seed):
    # Loss = sum(out * r) so dL/dout = r.
    r = np.random.default_rng(seed + 100).normal(size=layer.forward(x).shape)

    def loss():
        return float(np.sum(layer.forward(x, cache=False) * r))

    layer.forward(x)
    dx, grads = layer.backward(r)
    assert relative_error(dx, central_difference(loss, x)) < 1e-4
    for name, array in layer.params().items():
        assert relative_error(grads[name], central_difference(loss, array)) < 1e-4


@pytest.mark.parametrize('seed', SEEDS)
# Analytic gradients of every layer type agree with central differences.
def test_layer_gradients(seed):
    rng = np.random.default_rng(seed)
    _layer_check(ConvLayer(2, 3, 3, rng), rng.normal(size=(2, 2, 7)), seed)
    _layer_check(ReluLayer(), rng.normal(size=(2, 3, 5)), seed)
    _layer_check(MaxPoolLayer(2, 2), rng.normal(size=(2, 3, 8)), seed)
    _layer_check(FlattenLayer(), rng.normal(size=(2, 3, 4)), seed)
    _layer_check(DenseLayer(6, 4, rng), rng.normal(size=(3, 6)), seed)


@pytest.mark.parametrize('seed', SEEDS)
# Gradients of the composed default network agree with central differences.
def test_model_gradients(seed):
    rng = np.random.default_rng(seed)
    model = make_cnn(seed=seed)
    x = rng.uniform(size=(2, 11))
    r = rng.normal(size=(2, 5))

    def loss():
        return float(np.sum(model.predict(x) * r))

    model.forward(x)
    gradients = model.backward(r)
    for i, name, array in model.parameters():
        entries = rng.choice(array.size, size=min(array.size, 25), replace=False)
        numeric = central_difference(loss, array, h=1e-8, entries=entries)
        analytic = gradients[i][name].reshape(-1)[entries]
        assert relative_error(analytic, numeric.reshape(-1)[entries]) < 1e-4


# Checkpoints restore identical predictions; bad checkpoints are parse errors.
def test_checkpoint_round_trip(tmp_path):
    model = make_cnn(seed=5, variant='pi-cnn')
    path = str(tmp_path / 'model.npz')
    save_model(model, path)
    restored = load_model(path)
    x = np.random.default_rng(5).uniform(size=(6, 11))
    assert np.array_equal(restored.predict(x), model.predict(x))
    assert restored.variant == 'pi-cnn'
    assert restored.parameter_count() == model.parameter_count()

    broken = str(tmp_path / 'broken.npz')
    with open(broken, 'wb') as f:
        np.savez(f, topology=np.array('{"version": 99, "layers": []}'))
    with pytest.raises(ParseError):
        load_model(broken)
