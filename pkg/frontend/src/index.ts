export * from './protocol.js';
export * from './emoji.js';
export * from './viewmodel.js';
export * from './client.js';
export * from './ws.js';
