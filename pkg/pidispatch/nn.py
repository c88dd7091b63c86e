#*************************************************************************************
# Module: nn
#
# Revision      Date                            Release Comment
# --------   ----------   ------------------------------------------------------------
#   1.0      03/05/2026   Initial Release
#   1.1      03/12/2026   Batched kernels, cache-free predict(), checkpoints.
#
# File Description
# ------------------------------------------------------------------------------------
# Contains a minimal neural-network kernel: 1D convolution, ReLU, max-pooling,
# flatten and dense layers, an ordered layer stack with an explicit forward pass that
# caches what backpropagation needs, hand-derived gradients and the plain SGD update.
#
# Tensors are numpy arrays. A batch of 1D tensors has shape (batch, channels, length)
# in channel-major order; dense layers see (batch, features).
#
# Classes
# ------------------------------------------------------------------------------------
#    Name                                     Description
# ----------                  --------------------------------------------------------
# ConvLayer                   Valid-padding, stride-1 cross-correlation.
#
# ReluLayer                   Elementwise max(0, x).
#
# MaxPoolLayer                Window maximum with stride; first maximum wins ties.
#
# FlattenLayer                (batch, channels, length) -> (batch, channels*length).
#
# DenseLayer                  W x + b.
#
# CnnModel                    Ordered layer stack with forward/backward/predict.
#*************************************************************************************
import json
import logging
import math

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from pidispatch.exceptions import InputDomainError, ParseError, ShapeError, StateError

logger = logging.getLogger(__name__)

CHECKPOINT_VERSION = 1


def glorot_uniform(rng, shape, fan_in, fan_out):
    limit = math.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


class Layer(object):
    """Base class. Layers without parameters return {} from params() and grads."""

    kind = 'layer'

    def params(self):
        return {}

    def config(self):
        return {}

    def _cached(self, name):
        value = getattr(self, name, None)
        if value is None:
            raise StateError('{0}.backward() called before forward()'.format(type(self).__name__))
        return value


class ConvLayer(Layer):
    """1D convolution, out[k][t] = b_k + sum_i sum_j w[k][i][j] * x[i][t+j].

    Arguments
    ---------
    1. in_channels {int}
    2. out_channels {int}
    3. kernel_size {int}
    4. rng {Generator} -- Seeded generator for Glorot-uniform weights (zeros if None).
    """

    kind = 'conv'

    def __init__(self, in_channels, out_channels, kernel_size, rng=None):
        if min(in_channels, out_channels, kernel_size) < 1:
            raise InputDomainError('conv sizes must be positive')
        self.in_channels = in_channels
        self.out_channels = out_channels
        self.kernel_size = kernel_size
        shape = (out_channels, in_channels, kernel_size)
        if rng is None:
            self.weights = np.zeros(shape)
        else:
            self.weights = glorot_uniform(rng, shape, in_channels * kernel_size, out_channels * kernel_size)
        self.biases = np.zeros(out_channels)
        self.x = None

    def params(self):
        return {'weights': self.weights, 'biases': self.biases}

    def config(self):
        return {'in_channels': self.in_channels, 'out_channels': self.out_channels, 'kernel_size': self.kernel_size}

    def output_shape(self, shape):
        channels, length = shape
        return self.out_channels, length - self.kernel_size + 1

    def forward(self, x, cache=True):
        if x.ndim != 3 or x.shape[1] != self.in_channels:
            raise ShapeError('conv expects (batch, {0}, length), got {1}'.format(self.in_channels, x.shape))
        if x.shape[2] < self.kernel_size:
            raise ShapeError('conv input length {0} shorter than kernel {1}'.format(x.shape[2], self.kernel_size))
        windows = sliding_window_view(x, self.kernel_size, axis=2)
        out = np.einsum('nctk,ock->not', windows, self.weights) + self.biases[None, :, None]
        if cache:
            self.x = x
        return out

    def backward(self, delta):
        x = self._cached('x')
        windows = sliding_window_view(x, self.kernel_size, axis=2)
        grads = {
            'weights': np.einsum('not,nctk->ock', delta, windows),
            'biases': delta.sum(axis=(0, 2)),
        }
        # Full correlation of the deltas with the kernel routes them back to the input.
        dx = np.zeros_like(x)
        length = delta.shape[2]
        for j in range(self.kernel_size):
            dx[:, :, j:j + length] += np.einsum('not,oc->nct', delta, self.weights[:, :, j])
        return dx, grads


class ReluLayer(Layer):

    kind = 'relu'

    def __init__(self):
        self.mask = None

    def output_shape(self, shape):
        return shape

    def forward(self, x, cache=True):
        if cache:
            self.mask = x > 0
        return np.maximum(x, 0.0)

    def backward(self, delta):
        return delta * self._cached('mask'), {}


class MaxPoolLayer(Layer):

    kind = 'maxpool'

    def __init__(self, window=2, stride=2):
        if window < 1 or stride < 1:
            raise InputDomainError('pool window and stride must be at least 1')
        self.window = window
        self.stride = stride
        self.argmax = None
        self.input_shape = None

    def config(self):
        return {'window': self.window, 'stride': self.stride}

    def output_shape(self, shape):
        channels, length = shape
        return channels, (length - self.window) // self.stride + 1

    def forward(self, x, cache=True):
        if x.ndim != 3 or x.shape[2] < self.window:
            raise ShapeError('pool expects (batch, channels, length >= {0}), got {1}'.format(self.window, x.shape))
        windows = sliding_window_view(x, self.window, axis=2)[:, :, ::self.stride, :]
        # argmax returns the first maximum, which fixes the tie-break.
        argmax = windows.argmax(axis=3)
        out = np.take_along_axis(windows, argmax[..., None], axis=3)[..., 0]
        if cache:
            self.argmax = argmax
            self.input_shape = x.shape
        return out

    def backward(self, delta):
        argmax = self._cached('argmax')
        batch, channels, length = self.input_shape
        positions = argmax + self.stride * np.arange(argmax.shape[2])[None, None, :]
        dx = np.zeros(self.input_shape)
        n_idx, c_idx, _ = np.indices(argmax.shape)
        np.add.at(dx, (n_idx, c_idx, positions), delta)
        return dx, {}


class FlattenLayer(Layer):

    kind = 'flatten'

    def __init__(self):
        self.input_shape = None

    def output_shape(self, shape):
        return (int(np.prod(shape)),)

    def forward(self, x, cache=True):
        if cache:
            self.input_shape = x.shape
        return x.reshape(x.shape[0], -1)

    def backward(self, delta):
        return delta.reshape(self._cached('input_shape')), {}


class DenseLayer(Layer):

    kind = 'dense'

    def __init__(self, in_features, out_features, rng=None):
        if min(in_features, out_features) < 1:
            raise InputDomainError('dense sizes must be positive')
        self.in_features = in_features
        self.out_features = out_features
        if rng is None:
            self.weights = np.zeros((out_features, in_features))
        else:
            self.weights = glorot_uniform(rng, (out_features, in_features), in_features, out_features)
        self.biases = np.zeros(out_features)
        self.x = None

    def params(self):
        return {'weights': self.weights, 'biases': self.biases}

    def config(self):
        return {'in_features': self.in_features, 'out_features': self.out_features}

    def output_shape(self, shape):
        return (self.out_features,)

    def forward(self, x, cache=True):
        if x.ndim != 2 or x.shape[1] != self.in_features:
            raise ShapeError('dense expects (batch, {0}), got {1}'.format(self.in_features, x.shape))
        if cache:
            self.x = x
        return x @ self.weights.T + self.biases

    def backward(self, delta):
        x = self._cached('x')
        grads = {'weights': delta.T @ x, 'biases': delta.sum(axis=0)}
        return delta @ self.weights, grads


LAYER_TYPES = {cls.kind: cls for cls in (ConvLayer, ReluLayer, MaxPoolLayer, FlattenLayer, DenseLayer)}


def conv_forward(layer, x):
    return layer.forward(x)


def relu(x):
    return np.maximum(x, 0.0)


def maxpool_forward(layer, x):
    return layer.forward(x)


def dense_forward(layer, x):
    return layer.forward(x)


class CnnModel(object):
    """An ordered layer stack.

    A stack starting with a ConvLayer reshapes each feature vector to one channel;
    a stack starting with a DenseLayer consumes the vector directly.

    Arguments
    ---------
    1. layers {list} -- Layers in forward order.
    2. learning_rate {float} -- SGD step size epsilon.
    3. seed {int} -- Seed the weights were drawn with.
    4. n_inputs {int} -- Length of the feature vector.
    5. variant {string} -- Free-form tag (pi-cnn, cnn, dnn).

    Raises
    ------
    1. ShapeError: adjacent layers are incompatible.
    """

    def __init__(self, layers, learning_rate=0.01, seed=0, n_inputs=11, variant='cnn'):
        self.layers = list(layers)
        self.learning_rate = learning_rate
        self.seed = seed
        self.n_inputs = n_inputs
        self.variant = variant
        self.n_outputs = self._check_shapes()

    def _check_shapes(self):
        shape = (1, self.n_inputs) if self._convolutional else (self.n_inputs,)
        for layer in self.layers:
            if isinstance(layer, ConvLayer) and (len(shape) != 2 or shape[0] != layer.in_channels or shape[1] < layer.kernel_size):
                raise ShapeError('conv layer cannot take input of shape {0}'.format(shape))
            if isinstance(layer, MaxPoolLayer) and (len(shape) != 2 or shape[1] < layer.window):
                raise ShapeError('pool layer cannot take input of shape {0}'.format(shape))
            if isinstance(layer, DenseLayer) and shape != (layer.in_features,):
                raise ShapeError('dense layer expects {0} inputs, previous layer gives {1}'.format(layer.in_features, shape))
            shape = layer.output_shape(shape)
        return shape[0] if len(shape) == 1 else None

    @property
    def _convolutional(self):
        return bool(self.layers) and isinstance(self.layers[0], ConvLayer)

    def _prepare(self, features):
        x = np.asarray(features, dtype=float)
        if x.ndim == 1:
            x = x[None, :]
        if x.shape[1] != self.n_inputs:
            raise ShapeError('model expects {0} features, got {1}'.format(self.n_inputs, x.shape[1]))
        return x[:, None, :] if self._convolutional else x

    def forward(self, features, cache=True):
        """Returns (batch, outputs) predictions; caches layer state unless cache=False."""
        x = self._prepare(features)
        for layer in self.layers:
            x = layer.forward(x, cache)
        return x

    def predict(self, features):
        """Inference without touching the layer caches."""
        return self.forward(features, cache=False)

    def backward(self, loss_grad):
        """Returns one gradient dict per layer for dL/d(output) = loss_grad.

        Raises
        ------
        1. StateError: no forward pass has been cached.
        """
        delta = np.asarray(loss_grad, dtype=float)
        if delta.ndim == 1:
            delta = delta[None, :]
        gradients = [None] * len(self.layers)
        for i in range(len(self.layers) - 1, -1, -1):
            delta, gradients[i] = self.layers[i].backward(delta)
        return gradients

    def parameters(self):
        """Returns (layer index, name, array) for every trainable array."""
        return [(i, name, array) for i, layer in enumerate(self.layers) for name, array in layer.params().items()]

    def parameter_count(self):
        return int(sum(array.size for _, _, array in self.parameters()))

    def copy_parameters(self):
        return [array.copy() for _, _, array in self.parameters()]


def model_forward(model, features):
    return model.forward(features)


def model_backward(model, loss_grad):
    return model.backward(loss_grad)


def sgd_step(model, gradients, learning_rate=None):
    """Applies w <- w - epsilon * dL/dw and b <- b - epsilon * dL/db in place.

    Raises
    ------
    1. ShapeError: a gradient does not match its parameter.

    Returns
    -------
    CnnModel -- The same model, updated.
    """
    epsilon = model.learning_rate if learning_rate is None else learning_rate
    if len(gradients) != len(model.layers):
        raise ShapeError('expected {0} gradient entries, got {1}'.format(len(model.layers), len(gradients)))
    for layer, grads in zip(model.layers, gradients):
        for name, array in layer.params().items():
            grad = grads.get(name)
            if grad is None or grad.shape != array.shape:
                raise ShapeError('gradient for {0}.{1} has shape {2}, expected {3}'.format(
                    layer.kind, name, None if grad is None else grad.shape, array.shape))
            array -= epsilon * grad
    return model


def make_cnn(n_inputs=11, n_outputs=5, filters=(16, 32), kernel_size=3, pool=2, hidden=64,
             learning_rate=0.01, seed=0, variant='cnn'):
    """Default dispatch network.

    1 x n_inputs -> conv(filters[0], k) -> ReLU -> maxpool(pool, pool) ->
    conv(filters[1], k) -> ReLU -> flatten -> dense(hidden) -> ReLU -> dense(n_outputs).
    """
    rng = np.random.default_rng(seed)
    layers = [ConvLayer(1, filters[0], kernel_size, rng), ReluLayer(), MaxPoolLayer(pool, pool)]
    length = (n_inputs - kernel_size + 1 - pool) // pool + 1
    channels = filters[0]
    for count in filters[1:]:
        layers += [ConvLayer(channels, count, kernel_size, rng), ReluLayer()]
        length, channels = length - kernel_size + 1, count
    layers += [FlattenLayer(), DenseLayer(channels * length, hidden, rng), ReluLayer(),
               DenseLayer(hidden, n_outputs, rng)]
    return CnnModel(layers, learning_rate, seed, n_inputs, variant)


def save_model(model, path):
    """Writes topology (JSON) and parameters to a numpy .npz checkpoint."""
    topology = {
        'version': CHECKPOINT_VERSION,
        'learning_rate': model.learning_rate,
        'seed': model.seed,
        'n_inputs': model.n_inputs,
        'variant': model.variant,
        'layers': [{'kind': layer.kind, 'config': layer.config()} for layer in model.layers],
    }
    arrays = {'layer{0}_{1}'.format(i, name): array for i, name, array in model.parameters()}
    with open(path, 'wb') as f:
        np.savez(f, topology=np.array(json.dumps(topology)), **arrays)
    logger.info('Saved %s model (%d parameters) to %s', model.variant, model.parameter_count(), path)


def load_model(path):
    """Reads a checkpoint written by save_model().

    Raises
    ------
    1. ParseError: unknown version or layer kind, or missing arrays.
    """
    with np.load(path, allow_pickle=False) as archive:
        try:
            topology = json.loads(str(archive['topology']))
        except (KeyError, ValueError) as error:
            raise ParseError(None, 'checkpoint {0} has no readable topology: {1}'.format(path, error))
        if topology.get('version') != CHECKPOINT_VERSION:
            raise ParseError(None, 'unsupported checkpoint version {0}'.format(topology.get('version')))
        layers = []
        for i, entry in enumerate(topology['layers']):
            if entry['kind'] not in LAYER_TYPES:
                raise ParseError(None, 'unknown layer kind {0!r}'.format(entry['kind']))
            layer = LAYER_TYPES[entry['kind']](**entry['config'])
            for name, array in layer.params().items():
                key = 'layer{0}_{1}'.format(i, name)
                if key not in archive.files:
                    raise ParseError(None, 'checkpoint is missing {0}'.format(key))
                array[...] = archive[key]
            layers.append(layer)
    return CnnModel(layers, topology['learning_rate'], topology['seed'], topology['n_inputs'], topology['variant'])
